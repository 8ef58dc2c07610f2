"""Time-evolved two-qubit reduced density matrix and related 4x4 machinery.

Basis ordering is |00>, |01>, |10>, |11> throughout, with |0> the upper
(S^z = +1/2) eigenstate.  Pure dephasing fixes the structure of rho_s(t):
populations are frozen, the one-excitation coherences are multiplied by
A(t) exp(+-i t xi0 / 2), the |00><11| coherence by B(t), and the
|01><10| coherence by nothing at all (both states sit in the same
interaction eigenspace, a decoherence-free direction).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .dephasing import DephasingCoeffs
from .errors import InvalidParams, InvalidState, NotADensityMatrix

_NORM_TOL = 1e-12
_MAG_TOL = 1.0 + 1e-12

# sigma_y (x) sigma_y in the standard basis
SIGMA_YY = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class PureState2Q:
    """Amplitudes over |00>, |01>, |10>, |11>; must be normalized."""

    alpha: complex
    beta: complex
    gamma: complex
    delta: complex

    def __post_init__(self):
        amps = (self.alpha, self.beta, self.gamma, self.delta)
        if not all(math.isfinite(abs(complex(a))) for a in amps):
            raise InvalidState("non-finite amplitude")
        norm2 = sum(abs(complex(a)) ** 2 for a in amps)
        if abs(norm2 - 1.0) > _NORM_TOL:
            raise InvalidState(f"state norm^2 = {norm2!r} is not 1 within {_NORM_TOL}")

    @classmethod
    def normalized(cls, alpha, beta, gamma, delta) -> "PureState2Q":
        """Build a state from unnormalized amplitudes."""
        norm = math.sqrt(sum(abs(complex(a)) ** 2 for a in (alpha, beta, gamma, delta)))
        if norm == 0.0:
            raise InvalidState("cannot normalize the zero vector")
        return cls(alpha / norm, beta / norm, gamma / norm, delta / norm)

    def amplitudes(self) -> np.ndarray:
        return np.array(
            [self.alpha, self.beta, self.gamma, self.delta], dtype=complex
        )


def case_state(case: int) -> PureState2Q:
    """The four paradigmatic initial states.

    1: (|01> + |10>)/sqrt(2)   decoherence-free Bell state
    2: (|00> + |11>)/sqrt(2)   bath-exposed Bell state
    3: (|10> + |11>)/sqrt(2)   product state, stays separable
    4: (|0>+|1>)(|0>+|1>)/2    product state that entangles through xi0
    """
    r = 1.0 / math.sqrt(2.0)
    if case == 1:
        return PureState2Q(0.0, r, r, 0.0)
    if case == 2:
        return PureState2Q(r, 0.0, 0.0, r)
    if case == 3:
        return PureState2Q(0.0, 0.0, r, r)
    if case == 4:
        return PureState2Q(0.5, 0.5, 0.5, 0.5)
    raise InvalidParams(f"case must be 1..4, got {case}")


def evolve_reduced(
    state: PureState2Q, t: float, xi0: float, coeffs: DephasingCoeffs
) -> np.ndarray:
    """Reduced density matrix rho_s(t) for initial |Psi><Psi|.

    Populations equal |amplitude|^2 for all t; the (|01>,|10>) coherence
    carries no decay factor; the remaining coherences pick up A or B and
    the xi0 phases.  At t = 0 (A = B = 1) this is |Psi><Psi| exactly.
    """
    A, B = complex(coeffs.A), complex(coeffs.B)
    if abs(A) > _MAG_TOL or abs(B) > _MAG_TOL:
        raise InvalidParams("coefficients must have |A|, |B| <= 1")
    a, b, c, d = (
        complex(state.alpha),
        complex(state.beta),
        complex(state.gamma),
        complex(state.delta),
    )
    p = cmath.exp(0.5j * xi0 * t)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = abs(a) ** 2
    rho[1, 1] = abs(b) ** 2
    rho[2, 2] = abs(c) ** 2
    rho[3, 3] = abs(d) ** 2
    rho[0, 1] = a * b.conjugate() * A * p
    rho[0, 2] = a * c.conjugate() * A * p
    rho[0, 3] = a * d.conjugate() * B
    rho[1, 2] = b * c.conjugate()
    rho[1, 3] = b * d.conjugate() * A * p.conjugate()
    rho[2, 3] = c * d.conjugate() * A * p.conjugate()
    lower = np.triu(rho, 1).conj().T
    return rho + lower


def spin_flip(rho: np.ndarray) -> np.ndarray:
    """(sigma_y x sigma_y) rho* (sigma_y x sigma_y); an involution."""
    return SIGMA_YY @ rho.conj() @ SIGMA_YY


def r_matrix(rho: np.ndarray) -> np.ndarray:
    """rho times its spin-flip; square-rooted eigenvalues give concurrence."""
    return rho @ spin_flip(rho)


def pure_concurrence(state: PureState2Q) -> float:
    """Concurrence 2|alpha delta - beta gamma| of the pure state itself."""
    return 2.0 * abs(state.alpha * state.delta - state.beta * state.gamma)


def validate_density(
    rho: np.ndarray, *, herm_tol: float = 1e-12, trace_tol: float = 1e-12
) -> None:
    """Raise NotADensityMatrix unless rho is 4x4 Hermitian with unit trace.

    Positivity is checked downstream where an eigendecomposition happens
    anyway (see entanglement.concurrence).
    """
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise NotADensityMatrix(f"expected a 4x4 matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho.real)) or not np.all(np.isfinite(rho.imag)):
        raise NotADensityMatrix("matrix has non-finite entries")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > herm_tol:
        raise NotADensityMatrix(f"Hermiticity violated by {herm:.3g}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise NotADensityMatrix(f"trace = {tr!r} is not 1 within {trace_tol}")
