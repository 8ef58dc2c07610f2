"""Wootters concurrence and the closed-form case concurrences.

The concurrence of a two-qubit density matrix is
C = max(l1 - l2 - l3 - l4, 0) where l_i are the square roots of the
eigenvalues of R = rho rho~ in decreasing order.  R itself is not Hermitian;
the Hermitian route works with M = sqrt(rho) rho~ sqrt(rho), which is
similar to R and PSD.  Writing M = Q Q^dag with Q = sqrt(rho) (sy x sy)
sqrt(rho)^*, the l_i are exactly the singular values of Q; taking them
from a one-sided Jacobi SVD (4x4, dependency-free, unconditionally stable)
avoids square-rooting roundoff noise, so separable states return a clean
zero instead of a sqrt(eps)-sized residue.  The test suite cross-checks
the spectrum against a generic nonsymmetric eigensolver applied to R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dephasing import DephasingCoeffs
from .errors import InvalidParams, NotADensityMatrix
from .two_qubit import SIGMA_YY, PureState2Q, evolve_reduced, validate_density

_PSD_CLAMP = -1e-10  # eigenvalues of rho below this are a genuine violation
_ZERO_FLOOR = 1e-13  # |eig| below this is numerically zero (unit-trace scale)
_JACOBI_TOL = 1e-14  # off-diagonal norm relative to Frobenius
_JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class ConcurrenceValue:
    """Concurrence plus the four square-rooted R eigenvalues (sorted desc)."""

    c: float
    lambdas: tuple[float, float, float, float]


def jacobi_eigh(matrix: np.ndarray, *, tol: float = _JACOBI_TOL,
                max_sweeps: int = _JACOBI_MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns (eigenvalues, eigenvectors) with eigenvectors in columns,
    unsorted.  Each rotation zeroes one off-diagonal pair; sweeps stop when
    the off-diagonal norm drops below tol times the Frobenius norm.
    """
    a = np.array(matrix, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise InvalidParams(f"expected a square matrix, got shape {a.shape}")
    v = np.eye(n, dtype=complex)
    fro = float(np.linalg.norm(a))
    if fro == 0.0:
        return np.zeros(n), v
    for _ in range(max_sweeps):
        off = math.sqrt(2.0) * float(np.linalg.norm(np.triu(a, 1)))
        if off <= tol * fro:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= tol * fro / (n * n):
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                if app == aqq:
                    t = 1.0
                else:
                    tau = (app - aqq) / (2.0 * mag)
                    t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                g = np.eye(n, dtype=complex)
                g[p, p] = c
                g[p, q] = -s * phase
                g[q, p] = s * np.conj(phase)
                g[q, q] = c
                a = g.conj().T @ a @ g
                v = v @ g
    return a.diagonal().real.copy(), v


def _sqrt_psd(rho: np.ndarray) -> np.ndarray:
    """Matrix square root of a PSD-up-to-roundoff Hermitian matrix.

    Eigenvalues within the numerical-zero floor are set to exactly zero so
    rank-deficient inputs keep an exactly rank-deficient square root.
    """
    evals, evecs = jacobi_eigh(rho)
    if evals.min() < _PSD_CLAMP:
        raise NotADensityMatrix(
            f"negative eigenvalue {evals.min():.3g} beyond roundoff tolerance"
        )
    roots = np.where(evals < _ZERO_FLOOR, 0.0, np.sqrt(np.clip(evals, 0.0, None)))
    return (evecs * roots) @ evecs.conj().T


def singular_values(matrix: np.ndarray, *, tol: float = _JACOBI_TOL,
                    max_sweeps: int = _JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Singular values by one-sided Jacobi column orthogonalization, descending."""
    a = np.array(matrix, dtype=complex)
    n = a.shape[1]
    for _ in range(max_sweeps):
        done = True
        for p in range(n - 1):
            for q in range(p + 1, n):
                x, y = a[:, p], a[:, q]
                app = float(np.vdot(x, x).real)
                aqq = float(np.vdot(y, y).real)
                apq = complex(np.vdot(x, y))
                if app * aqq == 0.0 or abs(apq) <= tol * math.sqrt(app * aqq):
                    continue
                done = False
                mag = abs(apq)
                phase = apq / mag
                if app == aqq:
                    t = 1.0
                else:
                    tau = (app - aqq) / (2.0 * mag)
                    t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                new_x = c * x + s * np.conj(phase) * y
                new_y = -s * phase * x + c * y
                a[:, p], a[:, q] = new_x, new_y
        if done:
            break
    return np.sort(np.linalg.norm(a, axis=0))[::-1]


def concurrence(rho: np.ndarray) -> ConcurrenceValue:
    """Wootters concurrence of an arbitrary two-qubit density matrix.

    The square-rooted eigenvalues of R = rho rho~ are obtained as the
    singular values of Q = sqrt(rho) (sy x sy) sqrt(rho)^*, since
    Q Q^dag = sqrt(rho) rho~ sqrt(rho) is similar to R.
    """
    rho = np.asarray(rho, dtype=complex)
    validate_density(rho)
    sq = _sqrt_psd(rho)
    q = sq @ SIGMA_YY @ sq.conj()
    lambdas = tuple(float(s) for s in singular_values(q))
    c = max(lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3], 0.0)
    return ConcurrenceValue(c=c, lambdas=lambdas)


def _check_pair_norm(x: complex, y: complex) -> None:
    norm2 = abs(complex(x)) ** 2 + abs(complex(y)) ** 2
    if abs(norm2 - 1.0) > 1e-12:
        raise InvalidParams(f"amplitude pair norm^2 = {norm2!r} is not 1")


def case1_concurrence(beta: complex, gamma: complex) -> float:
    """beta|01> + gamma|10>: C = 2|beta||gamma| for all t.

    The state is an eigenstate of the interaction, so the bath never sees
    it: the entanglement is decoherence-free and time independent.
    """
    _check_pair_norm(beta, gamma)
    return 2.0 * abs(complex(beta)) * abs(complex(gamma))


def case2_concurrence(alpha: complex, delta: complex, coeffs: DephasingCoeffs) -> float:
    """alpha|00> + delta|11>: C(t) = 2|alpha||delta||B(t)|.

    The time dependence rides entirely on the two-excitation coefficient,
    so disentanglement runs exactly twice as fast as single-qubit
    decoherence (|B(t)| = |A(2t)|).
    """
    _check_pair_norm(alpha, delta)
    return 2.0 * abs(complex(alpha)) * abs(complex(delta)) * abs(complex(coeffs.B))


def case4_concurrence(t: float, xi0: float, coeffs: DephasingCoeffs) -> float:
    """Equal-amplitude product state: concurrence via the full pipeline.

    No closed form is used; the qubits entangle through xi0 while the bath
    damps the oscillation.  With A = B = 1 (no bath) the result is
    |sin(xi0 t / 2)|.
    """
    state = PureState2Q(0.5, 0.5, 0.5, 0.5)
    return concurrence(evolve_reduced(state, t, xi0, coeffs)).c
