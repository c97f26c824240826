"""Regime classification: universal class (UC) versus differentiated classes.

The shape function w(b) = b**s * A(1, b)**-(1-s) decides the regime. If it
decreases for ever the market is UC; if it has an interior minimum q0 the
market is DC, split into BDC/UDC by the shape of the price side.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .demand import (
    LOG_BRANCH_EPS,
    DomainError,
    MarketConfig,
    PriceResponse,
    QualityDistribution,
    check_scale_exponent,
    cumulative_demand,
    eval_h,
    require_power_law,
    scaling_exponent,
)
from .equilibrium import EquilibriumSolution, Sensitivity, classify_lhs, rhs, solve_price


class RegimeError(ValueError):
    """The operation is not defined in the market's regime."""


class Regime(str, enum.Enum):
    UC = "UC"
    BDC = "BDC"
    UDC = "UDC"

    @property
    def is_dc(self) -> bool:
        return self is not Regime.UC


@dataclass(frozen=True)
class RegimeVerdict:
    regime: Regime
    q0: Optional[float]
    boundary_margin: float
    sensitivity: Sensitivity


def uc_dc_boundary(alpha: float) -> float:
    """Largest s still in the UC regime, (alpha+1)/(alpha+2); defined for alpha > -1."""
    if not alpha > -1:
        raise DomainError("the UC/DC boundary exists only for alpha > -1")
    return (alpha + 1.0) / (alpha + 2.0)


def boundary_margin(alpha: float, s: float) -> float:
    """s minus the boundary value; +inf when alpha <= -1 (always DC)."""
    if alpha <= -1:
        return math.inf
    return s - uc_dc_boundary(alpha)


def is_dc(alpha: float, s: float) -> bool:
    # points on the boundary itself are UC
    return alpha <= -1 or s > uc_dc_boundary(alpha)


def w_shape(f: QualityDistribution, s: float, b: float) -> float:
    """w(b) = b**s * A(1, b)**-(1-s), i.e. the right side at c = 1, low = 1."""
    require_power_law(f)
    check_scale_exponent(s)
    if not b > 1:
        raise DomainError(f"b must be > 1, got {b}")
    return b**s * cumulative_demand(f, 1.0, b) ** (-(1.0 - s))


def log_w(alpha: float, s: float, log_b: float) -> float:
    """log w(b) at b = exp(log_b) > 1, stable for very large b."""
    if not log_b > 0:
        raise DomainError(f"b must be > 1, got exp({log_b})")
    t = alpha + 1.0
    if abs(t) < LOG_BRANCH_EPS:
        log_mass = math.log(log_b)
    elif t > 0:
        log_mass = t * log_b + math.log(-math.expm1(-t * log_b)) - math.log(t)
    else:
        log_mass = math.log(-math.expm1(t * log_b)) - math.log(-t)
    return s * log_b - (1.0 - s) * log_mass


def w_derivative_sign(alpha: float, s: float, log_b: float) -> int:
    """Sign of w'(b) at b = exp(log_b), from the sign-carrying factor of w'.

    The remaining factors of w'(b) are positive. Evaluated in log space so
    b may be far beyond floating-point range.
    """
    t = alpha + 1.0
    if abs(t) < LOG_BRANCH_EPS:
        # s ln b - (1 - s)
        return int(np.sign(s * log_b - (1.0 - s)))
    delta = (alpha + 2.0) * s - t
    if t < 0:
        # (-(2+alpha) s + alpha + 1) b^(alpha+1) + s
        return int(np.sign(s - delta * math.exp(t * log_b)))
    # ((2+alpha) s - alpha - 1) b^(alpha+1) - s
    if delta <= 0:
        return -1
    return int(np.sign(math.log(delta) + t * log_b - math.log(s)))


def derivative_sign_says_dc(alpha: float, s: float, log_b: float = math.log(1e8)) -> bool:
    """Numeric regime oracle: w increasing at large b means an interior minimum."""
    return w_derivative_sign(alpha, s, log_b) > 0


def optimal_quality(f: QualityDistribution, s: float) -> float:
    """q0, the minimiser of w: the quality of the first class in the DC regime."""
    alpha = require_power_law(f).alpha
    check_scale_exponent(s)
    if not is_dc(alpha, s):
        raise RegimeError(f"alpha={alpha}, s={s} is in the UC regime; w has no minimum")
    t = alpha + 1.0
    if abs(t) < LOG_BRANCH_EPS:
        return math.exp((1.0 - s) / s)
    delta = scaling_exponent(f, s)
    return (s / delta) ** (1.0 / t)


def classify_regime(f: QualityDistribution, h: PriceResponse, s: float) -> RegimeVerdict:
    alpha = require_power_law(f).alpha
    check_scale_exponent(s)
    sensitivity = classify_lhs(h, s).kind
    margin = boundary_margin(alpha, s)
    if not is_dc(alpha, s):
        return RegimeVerdict(Regime.UC, None, margin, sensitivity)
    # a bounded left side (sensitive or borderline) bounds the offered qualities
    regime = Regime.UDC if sensitivity is Sensitivity.INSENSITIVE else Regime.BDC
    return RegimeVerdict(regime, optimal_quality(f, s), margin, sensitivity)


def solvable_interval(cfg: MarketConfig) -> Optional[tuple[float, float]]:
    """Qualities b (first class, low = 1) at which a profitable price exists.

    Returns ``None`` if no quality is profitable. The upper end is ``inf``
    when the interval is unbounded (UC regime or insensitive demand).
    """
    f = require_power_law(cfg.f)
    ceiling = classify_lhs(cfg.h, cfg.s).ceiling
    if math.isinf(ceiling):
        return (1.0, math.inf)

    def excess(log_b: float) -> float:
        return math.log(cfg.c) + log_w(f.alpha, cfg.s, log_b) - math.log(ceiling)

    tiny = 1e-12
    if is_dc(f.alpha, cfg.s):
        x0 = math.log(optimal_quality(f, cfg.s))
        if excess(x0) > 0:
            return None
        lo = brentq(excess, tiny, x0) if x0 > tiny else x0
        x_hi = 2 * x0
        while excess(x_hi) <= 0:
            x_hi *= 2
        hi = brentq(excess, x0, x_hi)
        return (math.exp(lo), math.exp(hi))
    # UC: w decreases to 0, so everything above the crossing is solvable
    x_hi = 1.0
    while excess(x_hi) > 0:
        x_hi *= 2
        if x_hi > 700:
            return None
    return (math.exp(brentq(excess, tiny, x_hi)), math.inf)


@dataclass
class QualityTable:
    """Price, demand, weighted traffic and revenue over a grid of qualities.

    Entries are NaN where no profitable price exists at that quality.
    """

    b: np.ndarray
    price: np.ndarray
    demand: np.ndarray
    weighted_traffic: np.ndarray
    revenue: np.ndarray
    argmin_price_b: Optional[float] = None
    argmax_revenue_b: Optional[float] = None
    resolution: float = field(default=math.nan)

    @property
    def empty(self) -> bool:
        return bool(np.all(np.isnan(self.price)))


def competitive_vs_monopoly(cfg: MarketConfig, quality_grid: Sequence[float]) -> QualityTable:
    """Tabulate the first class as a function of its quality b.

    The competitive quality minimises the price; a monopolist would maximise
    revenue instead. Both are located on the supplied grid only, and the
    largest grid spacing is reported as ``resolution``.
    """
    grid = np.asarray(quality_grid, dtype=float)
    n = grid.size
    price = np.full(n, np.nan)
    demand = np.full(n, np.nan)
    traffic = np.full(n, np.nan)
    revenue = np.full(n, np.nan)
    profile = classify_lhs(cfg.h, cfg.s)
    for i, b in enumerate(grid):
        sol = solve_price(cfg.h, cfg.s, rhs(cfg.f, cfg.s, cfg.c, 1.0, b), profile)
        if not isinstance(sol, EquilibriumSolution):
            continue
        p = sol.price
        d = eval_h(cfg.h, p) * cumulative_demand(cfg.f, 1.0, b)
        price[i], demand[i], traffic[i], revenue[i] = p, d, b * d, p * d
    table = QualityTable(grid, price, demand, traffic, revenue)
    table.resolution = float(np.max(np.diff(grid))) if n > 1 else 0.0
    if not table.empty:
        table.argmin_price_b = float(grid[np.nanargmin(price)])
        table.argmax_revenue_b = float(grid[np.nanargmax(revenue)])
    return table
