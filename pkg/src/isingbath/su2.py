"""Closed-form 2x2 exponentials and trace identities for the sigma_x/sigma_z family.

Every bath operator in the mean-field model is a real combination
a*sigma_x + b*sigma_z, i.e. a traceless real-symmetric 2x2 matrix.  For this
two-parameter family the exponential, the unitary exponential and the trace
of a triple product exp(i*I1) exp(R) exp(i*I2) all have closed forms in terms
of q = sqrt(a^2 + b^2).  The triple-product trace is exact (not a commuting
approximation): the product of any three family members has a traceless
sigma_x/sigma_z part, so the naive four-term expansion loses nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams, RangeError

# cosh/sinh overflow just above 710; stay clear of it
_OVERFLOW_Q = 700.0
# below this, evaluate sinc-like ratios by series to avoid 0/0
_SMALL_Q = 1e-4


@dataclass(frozen=True)
class TracelessXZ:
    """Coefficients of a*sigma_x + b*sigma_z, i.e. [[b, a], [a, -b]]."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidParams(f"non-finite coefficients ({self.a}, {self.b})")

    @property
    def q(self) -> float:
        return math.hypot(self.a, self.b)

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.b, self.a], [self.a, -self.b]], dtype=complex)


def _sinch(q: float) -> float:
    """sinh(q)/q with the q -> 0 limit."""
    if abs(q) < _SMALL_Q:
        return 1.0 + q * q / 6.0
    return math.sinh(q) / q


def _sinc(q: float) -> float:
    """sin(q)/q with the q -> 0 limit."""
    if abs(q) < _SMALL_Q:
        return 1.0 - q * q / 6.0
    return math.sin(q) / q


def _tanhc(q: float) -> float:
    """tanh(q)/q with the q -> 0 limit."""
    if abs(q) < _SMALL_Q:
        return 1.0 - q * q / 3.0
    return math.tanh(q) / q


def exp_real(M: TracelessXZ) -> np.ndarray:
    """exp(M) = cosh(q) I + (sinh(q)/q) M for M = a*sigma_x + b*sigma_z.

    Raises RangeError once cosh(q) would overflow (|q| > ~700).
    """
    q = M.q
    if q > _OVERFLOW_Q:
        raise RangeError(f"q={q:.3g} overflows cosh; rescale the exponent")
    c = math.cosh(q)
    s = _sinch(q)
    return np.array(
        [[c + s * M.b, s * M.a], [s * M.a, c - s * M.b]], dtype=complex
    )


def exp_imag(M: TracelessXZ) -> np.ndarray:
    """exp(i M) = cos(q) I + i (sin(q)/q) M; always unitary."""
    q = M.q
    c = math.cos(q)
    s = _sinc(q)
    return np.array(
        [[c + 1j * s * M.b, 1j * s * M.a], [1j * s * M.a, c - 1j * s * M.b]],
        dtype=complex,
    )


def pair_trace(X: TracelessXZ, Y: TracelessXZ) -> float:
    """tr(XY) = 2 (a_x a_y + b_x b_y) for this family."""
    return 2.0 * (X.a * Y.a + X.b * Y.b)


def trace_triple(I1: TracelessXZ, R: TracelessXZ, I2: TracelessXZ) -> complex:
    """tr[exp(i I1) exp(R) exp(i I2)] in closed form.

    Expanding each factor as (cos/cosh) I + (sinc/sinch) M leaves four terms
    with nonzero trace; the triple product I1*R*I2 is traceless for this
    family, so the formula below is exact.
    """
    x, y, z = I1.q, R.q, I2.q
    if y > _OVERFLOW_Q:
        raise RangeError(f"q={y:.3g} overflows cosh; rescale the exponent")
    cosh_y = math.cosh(y)
    sinch_y = _sinch(y)
    cos_x, cos_z = math.cos(x), math.cos(z)
    sinc_x, sinc_z = _sinc(x), _sinc(z)
    out = 2.0 * cos_x * cos_z * cosh_y
    out += 1j * sinc_x * sinch_y * cos_z * pair_trace(I1, R)
    out += 1j * cos_x * sinch_y * sinc_z * pair_trace(R, I2)
    out -= sinc_x * sinc_z * cosh_y * pair_trace(I1, I2)
    return out


def single_spin_gibbs(w: float, h: float, T: float) -> np.ndarray:
    """Thermal 2x2 density matrix of one bath spin in fields (w, h).

    Returns exp((w S^x + h S^z)/T) / (2 cosh(sqrt(w^2+h^2)/(2T))) with
    S = sigma/2.  Evaluated as I/2 + tanh(q) (a sigma_x + b sigma_z)/(2q),
    which stays finite for any field/temperature ratio (T -> 0 gives the
    projector onto the upper eigenstate).
    """
    if T <= 0:
        raise InvalidParams(f"temperature must be positive, got {T}")
    a = w / (2.0 * T)
    b = h / (2.0 * T)
    q = math.hypot(a, b)
    f = 0.5 * _tanhc(q)
    return np.array(
        [[0.5 + f * b, f * a], [f * a, 0.5 - f * b]], dtype=complex
    )
