"""The equilibrium equation p * h(p)**(1-s) = c * b**s * A(low, b)**-(1-s).

The left side depends only on the price response and s; the right side
only on the quality distribution, c and the class interval. Competition
selects the smallest positive root.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from scipy.optimize import brentq

from .demand import (
    DomainError,
    Exponential,
    Gaussian,
    PriceResponse,
    QualityDistribution,
    Rational,
    check_scale_exponent,
    cumulative_demand,
    log_h,
)

ROOT_RTOL = 1e-12
MAX_ITER = 200
# beta*(1-s) within this of 1 counts as the borderline rational case
BORDERLINE_EPS = 1e-12
_MAX_DOUBLINGS = 1100


class EmptyDemandError(ValueError):
    """The class interval carries no demand, so the right side is undefined."""


class ConvergenceError(RuntimeError):
    """The root finder failed to meet its tolerance (internal error)."""


class Sensitivity(str, enum.Enum):
    SENSITIVE = "sensitive"
    INSENSITIVE = "insensitive"
    BORDERLINE = "borderline"


class Multiplicity(str, enum.Enum):
    UNIQUE_ROOT = "unique_root"
    SMALLEST_OF_SEVERAL = "smallest_of_several"


@dataclass(frozen=True)
class LhsProfile:
    """Shape of p -> p h(p)**(1-s).

    ``peak_price``/``peak_value`` are set for the sensitive shape,
    ``limit_value`` (the supremum approached as p grows) for the borderline one.
    """

    kind: Sensitivity
    peak_price: Optional[float] = None
    peak_value: Optional[float] = None
    limit_value: Optional[float] = None

    @property
    def ceiling(self) -> float:
        """Supremum of the left side over p > 0."""
        if self.kind is Sensitivity.SENSITIVE:
            return self.peak_value
        if self.kind is Sensitivity.BORDERLINE:
            return self.limit_value
        return math.inf


@dataclass(frozen=True)
class EquilibriumSolution:
    price: float
    residual: float
    multiplicity: Multiplicity


@dataclass(frozen=True)
class NoProfit:
    """No price covers the cost: the target exceeds what the left side reaches."""

    target: float
    ceiling: float


SolveResult = Union[EquilibriumSolution, NoProfit]


def lhs(h: PriceResponse, s: float, p: float) -> float:
    """Left side p * h(p)**(1-s); revenue per unit of cost scale."""
    check_scale_exponent(s)
    if not p >= 0:
        raise DomainError(f"price must be >= 0, got {p}")
    if p == 0:
        return 0.0
    if math.isinf(p):
        raise DomainError("price must be finite")
    return math.exp(math.log(p) + (1.0 - s) * log_h(h, p))


@lru_cache(maxsize=512)
def classify_lhs(h: PriceResponse, s: float) -> LhsProfile:
    check_scale_exponent(s)
    if isinstance(h, Rational):
        e = h.beta * (1.0 - s)
        if abs(e - 1.0) <= BORDERLINE_EPS:
            return LhsProfile(Sensitivity.BORDERLINE, limit_value=1.0 / h.a)
        if e < 1.0:
            return LhsProfile(Sensitivity.INSENSITIVE)
        # d/dp log lhs = 0  <=>  (a p)^beta = 1 / ((1-s) beta - 1)
        peak = (1.0 / (e - 1.0)) ** (1.0 / h.beta) / h.a
    elif isinstance(h, Exponential):
        peak = 1.0 / (1.0 - s)
    elif isinstance(h, Gaussian):
        peak = 1.0 / math.sqrt(2.0 * (1.0 - s))
    else:
        raise TypeError(f"unknown price response {h!r}")
    return LhsProfile(Sensitivity.SENSITIVE, peak_price=peak, peak_value=lhs(h, s, peak))


def rhs(f: QualityDistribution, s: float, c: float, low: float, b: float) -> float:
    """Right side c * b**s * A(low, b)**-(1-s) for a class serving (low, b]."""
    check_scale_exponent(s)
    if not b > low:
        raise DomainError(f"class quality {b} must exceed its lower boundary {low}")
    mass = cumulative_demand(f, low, b)
    if mass <= 0:
        raise EmptyDemandError(f"no demand between qualities {low} and {b}")
    return c * b**s * mass ** (-(1.0 - s))


def _root(h: PriceResponse, s: float, target: float, lo: float, hi: float) -> float:
    def g(p: float) -> float:
        return lhs(h, s, p) - target

    try:
        p, info = brentq(
            g, lo, hi, xtol=1e-300, rtol=4 * 2.220446049250313e-16,
            maxiter=MAX_ITER, full_output=True, disp=False,
        )
    except ValueError as exc:  # bracket lost its sign change
        raise ConvergenceError(str(exc)) from exc
    if not info.converged:
        raise ConvergenceError(f"root finder did not converge: {info.flag}")
    return p


def _expand_bracket(h: PriceResponse, s: float, target: float) -> tuple[float, float]:
    lo, hi = 0.0, 1.0
    for _ in range(_MAX_DOUBLINGS):
        if lhs(h, s, hi) >= target:
            return lo, hi
        lo, hi = hi, hi * 2.0
        if math.isinf(hi):
            break
    raise ConvergenceError(f"could not bracket a price for target {target}")


def solve_price(
    h: PriceResponse, s: float, target: float, profile: Optional[LhsProfile] = None
) -> SolveResult:
    """Smallest positive p with p h(p)**(1-s) == target, or NoProfit.

    Args:
        h: price response.
        s: economies-of-scale exponent.
        target: evaluated right side, > 0.
        profile: precomputed ``classify_lhs(h, s)``; computed if omitted.
    """
    if not (target > 0 and math.isfinite(target)):
        raise DomainError(f"target must be positive and finite, got {target}")
    profile = profile or classify_lhs(h, s)

    if profile.kind is Sensitivity.SENSITIVE:
        if target > profile.peak_value:
            return NoProfit(target, profile.peak_value)
        if target == profile.peak_value:
            p = profile.peak_price
            multiplicity = Multiplicity.UNIQUE_ROOT
        else:
            p = _root(h, s, target, 0.0, profile.peak_price)
            multiplicity = Multiplicity.SMALLEST_OF_SEVERAL
    else:
        if profile.kind is Sensitivity.BORDERLINE and target >= profile.limit_value:
            return NoProfit(target, profile.limit_value)
        lo, hi = _expand_bracket(h, s, target)
        p = _root(h, s, target, lo, hi)
        multiplicity = Multiplicity.UNIQUE_ROOT

    residual = lhs(h, s, p) - target
    if abs(residual) > ROOT_RTOL * max(1.0, target):
        raise ConvergenceError(f"residual {residual} exceeds tolerance at p={p}")
    return EquilibriumSolution(p, residual, multiplicity)
