"""Command-line front end: ``qosm <command> [options]``.

Exit codes: 0 success, 2 invalid parameters, 3 regime mismatch, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import cascade, figures
from .demand import DomainError, Exponential, Gaussian, PowerLaw, Rational
from .equilibrium import EquilibriumSolution, classify_lhs, rhs, solve_price
from .regime import RegimeError, classify_regime
from .uc_bounded import BoundedUcConfig, UcOutcome, uc_equilibrium, uc_threshold

EXIT_OK, EXIT_PARAM, EXIT_REGIME, EXIT_IO = 0, 2, 3, 4
COMMANDS = ("classify", "solve", "cascade", "sweep", "uc", "figures", "ratio-limits")


class ParameterError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    alpha: Optional[float] = None
    qm: Optional[float] = None
    s: Optional[float] = None
    h: str = "rational"
    beta: Optional[float] = None
    a: float = 1.0
    b: Optional[float] = None
    c: Optional[float] = None
    c_start: Optional[float] = None
    c_stop: Optional[float] = None
    c_count: Optional[int] = None
    c_log: bool = False
    max_classes: int = cascade.DEFAULT_MAX_CLASSES
    format: str = "csv"
    out: Optional[str] = None

    def price_response(self):
        if self.h == "rational":
            if self.beta is None:
                raise ParameterError("--beta is required with --h rational")
            return Rational(self.beta, self.a)
        if self.h == "exp":
            return Exponential()
        if self.h == "gauss":
            return Gaussian()
        raise ParameterError(f"unknown --h {self.h!r}; choose rational, exp or gauss")

    def quality_distribution(self) -> PowerLaw:
        if self.alpha is None:
            raise ParameterError("--alpha is required")
        return PowerLaw(self.alpha)

    def scale(self) -> float:
        if self.s is None:
            raise ParameterError("--s is required")
        if not 0 < self.s < 1:
            raise ParameterError(f"--s must lie in (0, 1), got {self.s}")
        return self.s

    def c_grid(self) -> list[float]:
        if self.c is not None:
            if not self.c > 0:
                raise ParameterError(f"--c must be positive, got {self.c}")
            return [self.c]
        if None in (self.c_start, self.c_stop, self.c_count):
            raise ParameterError("give --c, or all of --c-start, --c-stop and --c-count")
        if not (self.c_start > 0 and self.c_stop > 0):
            raise ParameterError("c grid bounds must be positive")
        if self.c_count < 1 or (self.c_count > 1 and self.c_start == self.c_stop):
            raise ParameterError("c grid must contain distinct points")
        space = np.geomspace if self.c_log else np.linspace
        grid = [float(x) for x in space(self.c_start, self.c_stop, self.c_count)]
        return sorted(grid, reverse=True)


def precision() -> int:
    raw = os.environ.get("QOSM_PRECISION", "12")
    try:
        digits = int(raw)
    except ValueError:
        raise ParameterError(f"QOSM_PRECISION must be an integer, got {raw!r}") from None
    if not 1 <= digits <= 17:
        raise ParameterError("QOSM_PRECISION must be between 1 and 17")
    return digits


def fmt(x, digits: int) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        if math.isnan(x):
            return ""
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(float(x), f".{digits}g")
    return str(x)


def to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    digits = precision()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row.get(col), digits) for col in columns])
    return buf.getvalue()


def _json_value(x):
    if isinstance(x, (float, np.floating)):
        # JSON has no infinity; unbounded quantities become null
        return float(x) if math.isfinite(x) else None
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def to_json(obj) -> str:
    if isinstance(obj, dict):
        obj = {k: _json_value(v) for k, v in obj.items()}
    else:
        obj = [{k: _json_value(v) for k, v in row.items()} for row in obj]
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, newline="\n")


def emit_record(cfg: RunConfig, record: dict) -> None:
    if cfg.format == "json":
        emit(to_json(record), cfg.out)
    else:
        emit(to_csv([record], list(record)), cfg.out)


def emit_rows(cfg: RunConfig, rows: list[dict], columns: list[str]) -> None:
    if cfg.format == "json":
        emit(to_json([{k: r.get(k) for k in columns} for r in rows]), cfg.out)
    else:
        emit(to_csv(rows, columns), cfg.out)


def _dc_limits(f, s) -> dict:
    return {
        "delta": cascade.scaling_exponent(f, s),
        "price_ratio_limit": cascade.price_ratio_limit(f, s),
        "traffic_ratio_limit": cascade.traffic_ratio_limit(f, s),
    }


def cmd_classify(cfg: RunConfig) -> int:
    f, h, s = cfg.quality_distribution(), cfg.price_response(), cfg.scale()
    v = classify_regime(f, h, s)
    record = {
        "alpha": f.alpha,
        "s": s,
        "regime": v.regime.value,
        "sensitivity": v.sensitivity.value,
        "boundary_margin": v.boundary_margin,
        "q0": v.q0,
    }
    if v.regime.is_dc:
        record.update(_dc_limits(f, s))
        record["first_threshold"] = cascade.first_threshold(f, h, s)
    emit(to_json(record), cfg.out)
    return EXIT_OK


def cmd_ratio_limits(cfg: RunConfig) -> int:
    f, s = cfg.quality_distribution(), cfg.scale()
    v = classify_regime(f, Exponential(), s)
    if not v.regime.is_dc:
        raise RegimeError("ratio limits exist only in the DC regime")
    record = {"alpha": f.alpha, "s": s, "q0": v.q0, **_dc_limits(f, s)}
    emit(to_json(record), cfg.out)
    return EXIT_OK


def cmd_solve(cfg: RunConfig) -> int:
    f, h, s = cfg.quality_distribution(), cfg.price_response(), cfg.scale()
    if cfg.c is None or not cfg.c > 0:
        raise ParameterError("solve needs a single positive --c")
    b = cfg.b
    if b is None:
        v = classify_regime(f, h, s)
        if not v.regime.is_dc:
            raise RegimeError("UC regime has no finite optimal quality; pass --b")
        b = v.q0
    if not b > 1:
        raise ParameterError(f"--b must exceed 1, got {b}")
    target = rhs(f, s, cfg.c, 1.0, b)
    sol = solve_price(h, s, target, classify_lhs(h, s))
    record = {"c": cfg.c, "b": b, "target": target}
    if isinstance(sol, EquilibriumSolution):
        record.update(status="ok", price=sol.price, residual=sol.residual,
                      multiplicity=sol.multiplicity.value)
    else:
        record.update(status="no_profit", price=None, residual=None, multiplicity=None)
    emit_record(cfg, record)
    return EXIT_OK


CASCADE_COLUMNS = ["c", "class_index", "lower_q", "upper_q", "price", "demand",
                   "weighted_traffic", "revenue", "appearance_threshold"]
SWEEP_COLUMNS = ["c", "regime", "n_classes", "truncated", "lowest_price", "highest_price",
                 "total_demand", "total_weighted_traffic", "total_revenue"]
UC_COLUMNS = ["c", "price", "demand", "weighted_traffic", "revenue"]


def _snapshots(cfg: RunConfig):
    f, h, s = cfg.quality_distribution(), cfg.price_response(), cfg.scale()
    if cfg.max_classes < 1:
        raise ParameterError("--max-classes must be >= 1")
    grid = cfg.c_grid()
    if not classify_regime(f, h, s).regime.is_dc:
        raise RegimeError("the class cascade is defined only in the DC regime")
    return cascade.sweep_c(f, h, s, grid, cfg.max_classes)


def cmd_cascade(cfg: RunConfig) -> int:
    rows = []
    for snap in _snapshots(cfg):
        for k in snap.classes:
            rows.append({
                "c": snap.c, "class_index": k.index, "lower_q": k.lower_boundary,
                "upper_q": k.quality, "price": k.price, "demand": k.demand,
                "weighted_traffic": k.weighted_traffic, "revenue": k.revenue,
                "appearance_threshold": k.appearance_threshold,
            })
    emit_rows(cfg, rows, CASCADE_COLUMNS)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    rows = []
    for snap in _snapshots(cfg):
        ks = snap.classes
        rows.append({
            "c": snap.c,
            "regime": snap.regime.regime.value,
            "n_classes": len(ks),
            "truncated": snap.truncated,
            "lowest_price": ks[0].price if ks else None,
            "highest_price": ks[-1].price if ks else None,
            "total_demand": sum(k.demand for k in ks),
            "total_weighted_traffic": sum(k.weighted_traffic for k in ks),
            "total_revenue": sum(k.revenue for k in ks),
        })
    emit_rows(cfg, rows, SWEEP_COLUMNS)
    return EXIT_OK


def cmd_uc(cfg: RunConfig) -> int:
    if cfg.qm is None or not cfg.qm > 1:
        raise ParameterError(f"--qm must be given and exceed 1, got {cfg.qm}")
    rows = []
    for c in cfg.c_grid():
        out = uc_equilibrium(BoundedUcConfig(cfg.qm, c))
        if isinstance(out, UcOutcome):
            rows.append({"c": c, "price": out.price, "demand": out.demand,
                         "weighted_traffic": out.weighted_traffic, "revenue": out.revenue})
        else:
            rows.append({"c": c})
    emit_rows(cfg, rows, UC_COLUMNS)
    sidecar = to_json({"q_m": cfg.qm, "s": 2.0 / 3.0, "threshold": uc_threshold(cfg.qm)})
    if cfg.out is None:
        sys.stderr.write(sidecar)
    else:
        Path(cfg.out + ".threshold.json").write_text(sidecar, newline="\n")
    return EXIT_OK


def cmd_figures(cfg: RunConfig) -> int:
    out = Path(cfg.out or "figures")
    out.mkdir(parents=True, exist_ok=True)
    for stem, build in figures.all_figures().items():
        rows = build()
        (out / f"{stem}.csv").write_text(to_csv(rows, list(rows[0])), newline="\n")
    return EXIT_OK


HANDLERS = {
    "classify": cmd_classify,
    "solve": cmd_solve,
    "cascade": cmd_cascade,
    "sweep": cmd_sweep,
    "uc": cmd_uc,
    "figures": cmd_figures,
    "ratio-limits": cmd_ratio_limits,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    add = common.add_argument
    # defaults are None so that --config values survive unless overridden
    add("--alpha", type=float, help="exponent of f(q) = q^alpha")
    add("--qm", type=float, help="quality cap of the bounded UC model")
    add("--s", type=float, help="economies-of-scale exponent, 0 < s < 1")
    add("--h", choices=["rational", "exp", "gauss"], help="price response family")
    add("--beta", type=float)
    add("--a", type=float)
    add("--b", type=float, help="class quality for `solve` (default q0)")
    add("--c", type=float, help="technology constant")
    add("--c-start", type=float)
    add("--c-stop", type=float)
    add("--c-count", type=int)
    add("--c-log", action="store_const", const=True, help="log-spaced c grid")
    add("--max-classes", type=int)
    add("--format", choices=["csv", "json"])
    add("--out", help="output file (directory for `figures`)")
    add("--config", help="JSON file with any of the options above")

    parser = argparse.ArgumentParser(prog="qosm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def resolve_config(ns: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if ns.config:
        try:
            loaded = json.loads(Path(ns.config).read_text())
        except OSError:
            raise
        except json.JSONDecodeError as exc:
            raise ParameterError(f"invalid JSON in {ns.config}: {exc}") from None
        if not isinstance(loaded, dict):
            raise ParameterError("config file must hold a JSON object")
        values.update({k.replace("-", "_"): v for k, v in loaded.items()})
    known = {f.name for f in fields(RunConfig)} - {"command"}
    unknown = set(values) - known
    if unknown:
        raise ParameterError(f"unknown config keys: {sorted(unknown)}")
    for name in known:
        flag = getattr(ns, name, None)
        if flag is not None:
            values[name] = flag
    return RunConfig(command=ns.command, **values)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = resolve_config(ns)
        return HANDLERS[cfg.command](cfg)
    except (ParameterError, DomainError, TypeError) as exc:
        print(f"qosm: error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except RegimeError as exc:
        print(f"qosm: regime mismatch: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except OSError as exc:
        print(f"qosm: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
