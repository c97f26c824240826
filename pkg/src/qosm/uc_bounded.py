"""Universal-class market with a hard quality cap q_m.

Demand is f(q) = q on [1, q_m] and zero above. With s = 2/3 and
h(p) = 1/(1 + p**3) the single class serves quality q_m and its price solves

    p / (1 + p**3)**(1/3) = 2**(1/3) * c * q_m**(2/3) * (q_m**2 - 1)**(-1/3).

The left side rises to the supremum 1, so service exists iff the right side
is below 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import minimize_scalar

from .demand import (
    DomainError,
    PriceResponse,
    Rational,
    TruncatedLinear,
    check_scale_exponent,
    cumulative_demand,
    eval_h,
)
from .equilibrium import EquilibriumSolution, NoProfit, classify_lhs, rhs, solve_price

SPECIAL_S = 2.0 / 3.0
SPECIAL_H = Rational(beta=3.0, a=1.0)


@dataclass(frozen=True)
class BoundedUcConfig:
    q_m: float
    c: float

    def __post_init__(self):
        if not self.q_m > 1:
            raise DomainError(f"q_m must be > 1, got {self.q_m}")
        if not (self.c > 0 and math.isfinite(self.c)):
            raise DomainError(f"c must be positive, got {self.c}")


@dataclass(frozen=True)
class UcOutcome:
    quality: float
    price: float
    demand: float
    weighted_traffic: float
    revenue: float
    residual: float


def uc_threshold(q_m: float) -> float:
    """c* = 2**(-1/3) q_m**(-2/3) (q_m**2 - 1)**(1/3); service exists iff c < c*."""
    if not q_m > 1:
        raise DomainError(f"q_m must be > 1, got {q_m}")
    return 2.0 ** (-1.0 / 3.0) * q_m ** (-2.0 / 3.0) * (q_m * q_m - 1.0) ** (1.0 / 3.0)


def special_lhs(p: float) -> float:
    return p / (1.0 + p**3) ** (1.0 / 3.0)


def special_rhs(cfg: BoundedUcConfig) -> float:
    q_m = cfg.q_m
    return 2.0 ** (1.0 / 3.0) * cfg.c * q_m ** (2.0 / 3.0) * (q_m * q_m - 1.0) ** (-1.0 / 3.0)


def uc_equilibrium(cfg: BoundedUcConfig) -> Union[UcOutcome, NoProfit]:
    """Price, demand, traffic and revenue of the single class of quality q_m."""
    target = special_rhs(cfg)
    if target >= 1.0:
        return NoProfit(target, 1.0)
    # p^3 / (1 + p^3) = target^3 inverts in closed form
    p = target / (-math.expm1(3.0 * math.log(target))) ** (1.0 / 3.0)
    demand = (1.0 / (1.0 + p**3)) * (cfg.q_m**2 - 1.0) / 2.0
    return UcOutcome(
        quality=cfg.q_m,
        price=p,
        demand=demand,
        weighted_traffic=cfg.q_m * demand,
        revenue=p * demand,
        residual=special_lhs(p) - target,
    )


def best_capped_quality(f: TruncatedLinear, s: float, grid_points: int = 2049) -> float:
    """Quality in (1, q_m] minimising the right side at c = 1.

    Grid search on a log grid, then bounded refinement between the
    neighbours of the best grid point.
    """
    check_scale_exponent(s)
    grid = np.exp(np.linspace(0.0, math.log(f.q_m), grid_points))[1:]
    grid[-1] = f.q_m
    values = np.array([rhs(f, s, 1.0, 1.0, b) for b in grid])
    i = int(np.argmin(values))
    if i == len(grid) - 1:
        return f.q_m
    lo = grid[i - 1] if i > 0 else 1.0 + 1e-12
    res = minimize_scalar(
        lambda b: rhs(f, s, 1.0, 1.0, b), bounds=(lo, grid[i + 1]), method="bounded",
        options={"xatol": 1e-12},
    )
    return float(res.x) if res.fun < values[i] else float(grid[i])


def uc_equilibrium_general(
    f: TruncatedLinear, h: PriceResponse, s: float, c: float
) -> Union[UcOutcome, NoProfit]:
    """Same model for any (s, h): picks the quality, then solves the general equation."""
    if not isinstance(f, TruncatedLinear):
        raise TypeError("a TruncatedLinear quality distribution is required")
    b = best_capped_quality(f, s)
    sol = solve_price(h, s, rhs(f, s, c, 1.0, b), classify_lhs(h, s))
    if not isinstance(sol, EquilibriumSolution):
        return sol
    demand = eval_h(h, sol.price) * cumulative_demand(f, 1.0, b)
    return UcOutcome(b, sol.price, demand, b * demand, sol.price * demand, sol.residual)
