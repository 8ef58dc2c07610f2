"""Mean-field self-consistency for the bath order parameter.

Below the critical temperature Tc = J/2 the transverse-Ising bath orders
along z.  The auxiliary energy scale Theta = sqrt(w^2 + 4 m^2 J^2) solves
Theta/J = tanh(Theta/(2T)); the order parameter follows as
m = sqrt(Theta^2 - w^2)/(2J), canonicalized to m >= 0, Theta >= 0 (the
m -> -m branch is physically equivalent).  Above the transition, or when
the transverse field is too strong (w/J >= tanh(w/2T)), the bath is
disordered and m = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable

from .errors import InvalidParams, NoConvergence

PHASE_ORDERED = "ordered"
PHASE_DISORDERED = "disordered"

# lower bisection bracket at w=0, excludes the trivial root Theta=0
_BRACKET_EPS = 1e-12
_DEFAULT_TOL = 1e-12
_MAX_BISECTIONS = 200


@dataclass(frozen=True)
class BathParams:
    """Bath couplings and temperature (all in the same energy units)."""

    J: float  # Ising exchange, >= 0
    w: float  # transverse field, >= 0
    T: float  # temperature times k_B, > 0

    def __post_init__(self):
        if not (math.isfinite(self.J) and self.J >= 0):
            raise InvalidParams(f"J must be finite and >= 0, got {self.J}")
        if not (math.isfinite(self.w) and self.w >= 0):
            raise InvalidParams(f"w must be finite and >= 0, got {self.w}")
        if not (math.isfinite(self.T) and self.T > 0):
            raise InvalidParams(f"T must be finite and > 0, got {self.T}")


@dataclass(frozen=True)
class OrderSolution:
    """Order parameter m, auxiliary scale Theta and the phase flag."""

    theta: float
    m: float
    phase: str

    def __post_init__(self):
        if self.phase not in (PHASE_ORDERED, PHASE_DISORDERED):
            raise InvalidParams(f"unknown phase {self.phase!r}")
        if self.theta < 0:
            raise InvalidParams(f"theta must be >= 0, got {self.theta}")
        if not 0.0 <= self.m <= 0.5 + 1e-12:
            raise InvalidParams(f"m must lie in [0, 1/2], got {self.m}")
        if self.phase == PHASE_DISORDERED and self.m != 0.0:
            raise InvalidParams("disordered solution must have m = 0")

    @property
    def ordered(self) -> bool:
        return self.phase == PHASE_ORDERED


def critical_temperature(J: float) -> float:
    """Tc = J/2."""
    if not (math.isfinite(J) and J >= 0):
        raise InvalidParams(f"J must be finite and >= 0, got {J}")
    return 0.5 * J


def is_ordered(p: BathParams) -> bool:
    """True iff the bath is in the symmetry-broken phase.

    For w > 0 the condition is w/J < tanh(w/(2T)); for w = 0 it reduces to
    T < Tc = J/2.  J = 0 never orders.
    """
    if p.J == 0:
        return False
    if p.w == 0:
        return p.T < critical_temperature(p.J)
    return p.w / p.J < math.tanh(p.w / (2.0 * p.T))


def solve_order(
    p: BathParams, tol: float = _DEFAULT_TOL, max_iter: int = _MAX_BISECTIONS
) -> OrderSolution:
    """Solve Theta/J = tanh(Theta/(2T)) for the ordered branch.

    Bisects f(Theta) = tanh(Theta/2T) - Theta/J on [max(w, 1e-12 J), J]:
    the bracket is valid because f(lower) > 0 exactly when the ordering
    condition holds and f(J) <= 0 for any T > 0 (tanh < 1).  Returns the
    disordered solution (m = 0, Theta = w) outside the ordered phase.

    Raises NoConvergence if the residual |f| < tol is not reached within
    max_iter bisections.
    """
    if tol <= 0:
        raise InvalidParams(f"tol must be > 0, got {tol}")
    if max_iter < 1:
        raise InvalidParams(f"max_iter must be >= 1, got {max_iter}")
    if not is_ordered(p):
        return OrderSolution(theta=p.w, m=0.0, phase=PHASE_DISORDERED)

    J, w, T = p.J, p.w, p.T

    def f(theta: float) -> float:
        return math.tanh(theta / (2.0 * T)) - theta / J

    lo = max(w, _BRACKET_EPS * J)
    hi = J
    if abs(f(hi)) < tol:
        # tanh saturates to 1 in double precision: T -> 0 limit, Theta = J
        return OrderSolution(theta=hi, m=_order_parameter(hi, w, J), phase=PHASE_ORDERED)

    theta = None
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if abs(fmid) < tol:
            theta = mid
            break
        if fmid > 0.0:
            lo = mid
        else:
            hi = mid
    if theta is None:
        raise NoConvergence(
            f"bisection residual did not reach tol={tol:g} in {max_iter} iterations"
        )
    return OrderSolution(theta=theta, m=_order_parameter(theta, w, J), phase=PHASE_ORDERED)


def _order_parameter(theta: float, w: float, J: float) -> float:
    return math.sqrt(max(theta * theta - w * w, 0.0)) / (2.0 * J)


def order_parameter_sweep(
    p: BathParams, T_list: Iterable[float], tol: float = _DEFAULT_TOL
) -> list[tuple[float, OrderSolution]]:
    """solve_order at each temperature, preserving input order."""
    out = []
    for T in T_list:
        out.append((T, solve_order(replace(p, T=T), tol=tol)))
    return out
