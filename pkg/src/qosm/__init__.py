"""Competitive pricing of quality-differentiated services under economies of scale."""

from .cascade import (
    CascadeSnapshot,
    ClassOutcome,
    appearance_threshold,
    class_outcome,
    first_threshold,
    price_ratio_limit,
    snapshot,
    sweep_c,
    traffic_ratio_limit,
)
from .demand import (
    Exponential,
    Gaussian,
    MarketConfig,
    PowerLaw,
    Rational,
    TruncatedLinear,
    cumulative_demand,
    eval_f,
    eval_h,
    scaling_exponent,
)
from .equilibrium import (
    EquilibriumSolution,
    LhsProfile,
    NoProfit,
    Sensitivity,
    classify_lhs,
    lhs,
    rhs,
    solve_price,
)
from .regime import (
    Regime,
    RegimeVerdict,
    classify_regime,
    competitive_vs_monopoly,
    optimal_quality,
    w_shape,
)
from .uc_bounded import BoundedUcConfig, uc_equilibrium, uc_threshold

__all__ = [
    "appearance_threshold",
    "BoundedUcConfig",
    "CascadeSnapshot",
    "class_outcome",
    "classify_lhs",
    "classify_regime",
    "ClassOutcome",
    "competitive_vs_monopoly",
    "cumulative_demand",
    "EquilibriumSolution",
    "eval_f",
    "eval_h",
    "Exponential",
    "first_threshold",
    "Gaussian",
    "lhs",
    "LhsProfile",
    "MarketConfig",
    "NoProfit",
    "optimal_quality",
    "PowerLaw",
    "price_ratio_limit",
    "Rational",
    "Regime",
    "RegimeVerdict",
    "rhs",
    "scaling_exponent",
    "Sensitivity",
    "snapshot",
    "solve_price",
    "sweep_c",
    "traffic_ratio_limit",
    "TruncatedLinear",
    "uc_equilibrium",
    "uc_threshold",
    "w_shape",
]

__version__ = "0.1.0"
