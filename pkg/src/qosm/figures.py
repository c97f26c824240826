"""Tabulated data behind each figure of the model, as lists of row dicts.

Parameters the model leaves open (grids, the cost level used
for the quality tables, the quality cap of the bounded UC example) are
fixed here so the output is deterministic.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .cascade import first_threshold, snapshot
from .demand import MarketConfig, PowerLaw, Rational
from .equilibrium import lhs, rhs
from .regime import competitive_vs_monopoly, solvable_interval, uc_dc_boundary
from .uc_bounded import BoundedUcConfig, UcOutcome, uc_equilibrium, uc_threshold

Rows = list[dict]

BDC_REFERENCE = (PowerLaw(-2.5), Rational(beta=6.0, a=0.7), 2.0 / 3.0)
UDC_REFERENCE = (PowerLaw(-2.5), Rational(beta=2.0, a=1.0), 2.0 / 3.0)
UC_EXAMPLE = (PowerLaw(1.0), Rational(beta=6.0, a=1.0), 0.5)
UC_REAL_QM = 10.0


def lhs_curve(beta: float, s: float = 2.0 / 3.0, p_max: float = 3.0, n: int = 301) -> Rows:
    h = Rational(beta, 1.0)
    return [{"p": p, "lhs": lhs(h, s, p)} for p in np.linspace(0.0, p_max, n)]


def rhs_curves(alpha: float, s_values=(0.4, 0.6, 0.8), b_max: float = 10.0, n: int = 200) -> Rows:
    f = PowerLaw(alpha)
    grid = np.linspace(1.0, b_max, n + 1)[1:]
    return [{"s": s, "b": b, "rhs": rhs(f, s, 1.0, 1.0, b)} for s in s_values for b in grid]


def quality_table(cfg: MarketConfig, grid) -> Rows:
    t = competitive_vs_monopoly(cfg, grid)
    return [
        {"b": t.b[i], "price": t.price[i], "demand": t.demand[i],
         "weighted_traffic": t.weighted_traffic[i], "revenue": t.revenue[i]}
        for i in range(t.b.size)
    ]


def dc_quality_grid(cfg: MarketConfig, n: int = 400) -> np.ndarray:
    lo, hi = solvable_interval(cfg)
    return np.linspace(lo, hi, n)


def boundary_curve(n: int = 200) -> Rows:
    alphas = np.linspace(-1.0, 3.0, n + 1)[1:]
    return [{"alpha": a, "s": uc_dc_boundary(a)} for a in alphas]


def class_evolution(f, h, s, k: int, c_grid) -> Rows:
    rows = []
    for c in c_grid:
        snap = snapshot(MarketConfig(f, h, s, c), max_classes=max(k + 1, 32))
        cls = snap.classes[k] if k < len(snap.classes) else None
        rows.append({
            "c": c,
            "price": cls.price if cls else None,
            "demand": cls.demand if cls else None,
            "weighted_traffic": cls.weighted_traffic if cls else None,
            "revenue": cls.revenue if cls else None,
        })
    return rows


def uc_evolution(q_m: float, c_grid) -> Rows:
    rows = []
    for c in c_grid:
        out = uc_equilibrium(BoundedUcConfig(q_m, c))
        ok = isinstance(out, UcOutcome)
        rows.append({
            "c": c,
            "price": out.price if ok else None,
            "demand": out.demand if ok else None,
            "weighted_traffic": out.weighted_traffic if ok else None,
            "revenue": out.revenue if ok else None,
        })
    return rows


def bdc_c_grid(n: int = 300) -> np.ndarray:
    c0 = first_threshold(*BDC_REFERENCE)
    return np.geomspace(1.5 * c0, 1e-3 * c0, n)


def all_figures() -> dict[str, Callable[[], Rows]]:
    """File stem -> builder. Order is the order files are written."""
    bdc_cfg = MarketConfig(*BDC_REFERENCE, c=0.8 * first_threshold(*BDC_REFERENCE))
    uc_cfg = MarketConfig(*UC_EXAMPLE, c=1.0)
    udc_grid = np.geomspace(10.0, 1e-3, 300)
    c_star = uc_threshold(UC_REAL_QM)
    return {
        "lhs_sensitive": lambda: lhs_curve(6.0),
        "lhs_insensitive": lambda: lhs_curve(2.0, p_max=10.0),
        "rhs_alpha_1": lambda: rhs_curves(1.0),
        "rhs_alpha_minus_1": lambda: rhs_curves(-1.0),
        "quality_dc": lambda: quality_table(bdc_cfg, dc_quality_grid(bdc_cfg)),
        "quality_uc": lambda: quality_table(
            uc_cfg, np.linspace(solvable_interval(uc_cfg)[0], 20.0, 400)
        ),
        "uc_dc_boundary": boundary_curve,
        "uc_real": lambda: uc_evolution(UC_REAL_QM, np.geomspace(1.2 * c_star, 1e-3 * c_star, 300)),
        "bdc_class0": lambda: class_evolution(*BDC_REFERENCE, 0, bdc_c_grid()),
        "bdc_class1": lambda: class_evolution(*BDC_REFERENCE, 1, bdc_c_grid()),
        "udc_class0": lambda: class_evolution(*UDC_REFERENCE, 0, udc_grid),
        "udc_class1": lambda: class_evolution(*UDC_REFERENCE, 1, udc_grid),
    }

