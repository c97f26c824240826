"""Differentiated-classes dynamics as the technology constant c falls.

With f(q) = q**alpha the class structure is self-similar: class k serves
qualities (q0**k, q0**(k+1)] and behaves exactly like class 0 at the larger
constant c * q0**(k*delta). Class k therefore appears at
c_k = c0 * q0**(-k*delta) and its price is p_k(c) = p_0(c * q0**(k*delta)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .demand import (
    LOG_BRANCH_EPS,
    MarketConfig,
    PriceResponse,
    QualityDistribution,
    cumulative_demand,
    eval_h,
    require_power_law,
    scaling_exponent,
)
from .equilibrium import (
    EquilibriumSolution,
    LhsProfile,
    Sensitivity,
    classify_lhs,
    solve_price,
)
from .regime import Regime, RegimeError, RegimeVerdict, classify_regime, w_shape

DEFAULT_MAX_CLASSES = 32


class CascadeCapError(ValueError):
    """More bounded-regime classes are offered than ``max_classes`` allows."""


@dataclass(frozen=True)
class ClassOutcome:
    index: int
    quality: float
    lower_boundary: float
    appearance_threshold: float
    price: float
    demand: float
    weighted_traffic: float
    revenue: float


@dataclass(frozen=True)
class CascadeSnapshot:
    c: float
    regime: RegimeVerdict
    classes: tuple[ClassOutcome, ...] = field(default_factory=tuple)
    truncated: bool = False

    @property
    def qualities(self) -> list[float]:
        return [k.quality for k in self.classes]


@dataclass(frozen=True)
class _Structure:
    """c-independent data shared by every snapshot of one market."""

    verdict: RegimeVerdict
    profile: LhsProfile
    q0: float
    delta: float
    w0: float  # w(q0)
    c0: float  # inf when classes exist at every c


def _structure(f: QualityDistribution, h: PriceResponse, s: float) -> _Structure:
    require_power_law(f)
    verdict = classify_regime(f, h, s)
    if verdict.regime is Regime.UC:
        raise RegimeError("class cascade is only defined in the DC regime")
    profile = classify_lhs(h, s)
    q0 = verdict.q0
    w0 = w_shape(f, s, q0)
    return _Structure(verdict, profile, q0, scaling_exponent(f, s), w0, profile.ceiling / w0)


def first_threshold(f: QualityDistribution, h: PriceResponse, s: float) -> float:
    """c0, the largest c at which any class is profitable.

    Returns ``math.inf`` in the UDC sub-regime, where classes exist at every c.
    """
    return _structure(f, h, s).c0


def appearance_threshold(f: QualityDistribution, h: PriceResponse, s: float, k: int) -> float:
    """c_k = c0 * q0**(-k*delta), the constant below which class k is offered."""
    st = _structure(f, h, s)
    return st.c0 * st.q0 ** (-k * st.delta)


def _class_count(st: _Structure, c: float) -> int:
    """Number of k with c <= c_k (strict for the borderline case, whose ceiling is never reached)."""
    if math.isinf(st.c0):
        return math.inf

    def offered(k: int) -> bool:
        ck = st.c0 * st.q0 ** (-k * st.delta)
        return c < ck if st.profile.kind is Sensitivity.BORDERLINE else c <= ck

    if not offered(0):
        return 0
    n = int(math.floor(math.log(st.c0 / c) / (st.delta * math.log(st.q0)))) + 1
    while n > 0 and not offered(n - 1):
        n -= 1
    while offered(n):
        n += 1
    return n


def _class_outcome(f, h, s, st: _Structure, c: float, k: int) -> ClassOutcome:
    lower = st.q0**k
    upper = st.q0 ** (k + 1)
    target = c * st.q0 ** (k * st.delta) * st.w0
    if st.profile.kind is Sensitivity.SENSITIVE:
        # class counted as offered; absorb rounding at the tangency
        target = min(target, st.profile.peak_value)
    sol = solve_price(h, s, target, st.profile)
    assert isinstance(sol, EquilibriumSolution), sol
    p = sol.price
    demand = eval_h(h, p) * cumulative_demand(f, lower, upper)
    return ClassOutcome(
        index=k,
        quality=upper,
        lower_boundary=lower,
        appearance_threshold=st.c0 * st.q0 ** (-k * st.delta),
        price=p,
        demand=demand,
        weighted_traffic=upper * demand,
        revenue=p * demand,
    )


def class_outcome(cfg: MarketConfig, k: int) -> Optional[ClassOutcome]:
    """Class k alone at ``cfg.c``, or None if it is not offered yet."""
    if k < 0:
        raise ValueError("class index must be >= 0")
    st = _structure(cfg.f, cfg.h, cfg.s)
    if k >= _class_count(st, cfg.c):
        return None
    return _class_outcome(cfg.f, cfg.h, cfg.s, st, cfg.c, k)


def snapshot(cfg: MarketConfig, max_classes: int = DEFAULT_MAX_CLASSES) -> CascadeSnapshot:
    """All classes offered at ``cfg.c``.

    In BDC the list is complete; :class:`CascadeCapError` is raised if it
    would exceed ``max_classes``. In UDC the (infinite) list is cut at
    ``max_classes`` and flagged as truncated.
    """
    if max_classes < 1:
        raise ValueError("max_classes must be >= 1")
    st = _structure(cfg.f, cfg.h, cfg.s)
    n = _class_count(st, cfg.c)
    truncated = math.isinf(n)
    if truncated:
        n = max_classes
    elif n > max_classes:
        raise CascadeCapError(f"{n} classes offered at c={cfg.c}, above max_classes={max_classes}")
    classes = tuple(_class_outcome(cfg.f, cfg.h, cfg.s, st, cfg.c, k) for k in range(n))
    return CascadeSnapshot(cfg.c, st.verdict, classes, truncated)


def sweep_c(
    f: QualityDistribution,
    h: PriceResponse,
    s: float,
    c_grid: Sequence[float],
    max_classes: int = DEFAULT_MAX_CLASSES,
) -> list[CascadeSnapshot]:
    grid = [float(c) for c in c_grid]
    if any(b >= a for a, b in zip(grid, grid[1:])):
        raise ValueError("c grid must be strictly decreasing")
    return [snapshot(MarketConfig(f, h, s, c), max_classes) for c in grid]


def _dc_exponents(f: QualityDistribution, s: float) -> tuple[float, float]:
    alpha = require_power_law(f).alpha
    delta = scaling_exponent(f, s)
    if alpha > -1 and delta <= 0:
        raise RegimeError(f"alpha={alpha}, s={s} is in the UC regime")
    return alpha, delta


def price_ratio_limit(f: QualityDistribution, s: float) -> float:
    """lim p_{k+1}/p_k as c -> 0, (s/delta)**(delta/(alpha+1)), which is q0**delta."""
    alpha, delta = _dc_exponents(f, s)
    t = alpha + 1.0
    if abs(t) < LOG_BRANCH_EPS:
        return math.exp(delta * (1.0 - s) / s)
    return (s / delta) ** (delta / t)


def traffic_ratio_limit(f: QualityDistribution, s: float) -> float:
    """lim of the weighted-traffic ratio of neighbouring classes as c -> 0: q0**(alpha+2)."""
    alpha, delta = _dc_exponents(f, s)
    t = alpha + 1.0
    if abs(t) < LOG_BRANCH_EPS:
        q0 = math.exp((1.0 - s) / s)
    else:
        q0 = (s / delta) ** (1.0 / t)
    return q0 ** (alpha + 2.0)
