"""Demand side of the market: quality distribution f, price response h.

Demand for quality ``q`` at price ``p`` is decoupled as ``f(q) * h(p)``.
Only the parametric families below are supported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

# |alpha + 1| below this is treated as the logarithmic case.
LOG_BRANCH_EPS = 1e-9


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class DivergentIntegralError(ValueError):
    """The cumulative demand over an unbounded range is infinite."""


class UnsupportedDistributionError(TypeError):
    """The operation is only defined for power-law quality distributions."""


@dataclass(frozen=True)
class PowerLaw:
    """f(q) = q**alpha. Any finite alpha is allowed."""

    alpha: float

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise DomainError(f"alpha must be finite, got {self.alpha}")


@dataclass(frozen=True)
class TruncatedLinear:
    """f(q) = q on [1, q_m], zero above the quality cap q_m."""

    q_m: float

    def __post_init__(self):
        if not self.q_m > 1:
            raise DomainError(f"q_m must be > 1, got {self.q_m}")


@dataclass(frozen=True)
class Rational:
    """h(p) = 1 / (1 + (a p)**beta)."""

    beta: float
    a: float = 1.0

    def __post_init__(self):
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise DomainError(f"beta must be > 0, got {self.beta}")
        if not (self.a > 0 and math.isfinite(self.a)):
            raise DomainError(f"a must be > 0, got {self.a}")


@dataclass(frozen=True)
class Exponential:
    """h(p) = exp(-p)."""


@dataclass(frozen=True)
class Gaussian:
    """h(p) = exp(-p**2)."""


QualityDistribution = Union[PowerLaw, TruncatedLinear]
PriceResponse = Union[Rational, Exponential, Gaussian]


@dataclass(frozen=True)
class MarketConfig:
    """One market instance: demand (f, h), economies of scale s, cost level c.

    Providing ``w`` unit-quality services costs ``c * w**s``.
    """

    f: QualityDistribution
    h: PriceResponse
    s: float
    c: float

    def __post_init__(self):
        check_scale_exponent(self.s)
        if not (self.c > 0 and math.isfinite(self.c)):
            raise DomainError(f"c must be a positive finite number, got {self.c}")

    def with_c(self, c: float) -> "MarketConfig":
        return MarketConfig(self.f, self.h, self.s, c)


def check_scale_exponent(s: float) -> None:
    if not 0 < s < 1:
        raise DomainError(f"s must lie in (0, 1), got {s}")


def require_power_law(f: QualityDistribution) -> PowerLaw:
    if not isinstance(f, PowerLaw):
        raise UnsupportedDistributionError(
            f"{type(f).__name__} is not supported here; a PowerLaw distribution is required"
        )
    return f


def eval_f(f: QualityDistribution, q: float) -> float:
    """Density of demand at quality ``q`` (q >= 1)."""
    if not q >= 1:
        raise DomainError(f"quality must be >= 1, got {q}")
    if isinstance(f, PowerLaw):
        return q**f.alpha
    if isinstance(f, TruncatedLinear):
        return q if q <= f.q_m else 0.0
    raise UnsupportedDistributionError(type(f).__name__)


def eval_h(h: PriceResponse, p: float) -> float:
    """Fraction of the zero-price demand remaining at price ``p``."""
    if not p >= 0:
        raise DomainError(f"price must be >= 0, got {p}")
    if p == 0:
        return 1.0
    if isinstance(h, Rational):
        try:
            return 1.0 / (1.0 + (h.a * p) ** h.beta)
        except OverflowError:
            return 0.0
    if isinstance(h, Exponential):
        return math.exp(-p)
    if isinstance(h, Gaussian):
        return math.exp(-p * p)
    raise TypeError(f"unknown price response {h!r}")


def log_h(h: PriceResponse, p: float) -> float:
    """log h(p) for p > 0, computed without overflow for large p."""
    if isinstance(h, Rational):
        z = h.beta * math.log(h.a * p)
        # log1p(e^z), stable on both sides of zero
        if z > 0:
            return -(z + math.log1p(math.exp(-z)))
        return -math.log1p(math.exp(z))
    if isinstance(h, Exponential):
        return -p
    if isinstance(h, Gaussian):
        return -p * p
    raise TypeError(f"unknown price response {h!r}")


def _power_integral(alpha: float, a: float, b: float) -> float:
    t = alpha + 1.0
    log_ratio = math.log(b / a)
    if abs(t) < LOG_BRANCH_EPS:
        return log_ratio
    # a^t (e^{t ln(b/a)} - 1) / t avoids cancellation when t is small
    return a**t * math.expm1(t * log_ratio) / t


def cumulative_demand(f: QualityDistribution, a: float, b: float) -> float:
    """Zero-price demand for qualities in [a, b]: the integral of f from a to b.

    ``b`` may be ``math.inf``. For a power law this converges only when
    alpha < -1; otherwise :class:`DivergentIntegralError` is raised.
    """
    if not a >= 1:
        raise DomainError(f"lower bound must be >= 1, got {a}")
    if not b >= a:
        raise DomainError(f"upper bound {b} is below lower bound {a}")
    if isinstance(f, TruncatedLinear):
        lo, hi = min(a, f.q_m), min(b, f.q_m)
        return (hi * hi - lo * lo) / 2.0
    if isinstance(f, PowerLaw):
        if b == a:
            return 0.0
        if math.isinf(b):
            t = f.alpha + 1.0
            if t >= -LOG_BRANCH_EPS:
                raise DivergentIntegralError(
                    f"integral of q^{f.alpha} up to infinity diverges"
                )
            return -(a**t) / t
        return _power_integral(f.alpha, a, b)
    raise UnsupportedDistributionError(type(f).__name__)


def scaling_exponent(f: QualityDistribution, s: float) -> float:
    """Exponent delta = (alpha + 2) s - (alpha + 1).

    Rescaling qualities by q0 multiplies the cost level c by q0**delta;
    delta > 0 exactly in the differentiated-classes regime.
    """
    alpha = require_power_law(f).alpha
    return (alpha + 2.0) * s - (alpha + 1.0)
