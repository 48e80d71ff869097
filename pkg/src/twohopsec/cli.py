"""Command-line front end: bounds, tau-range, max-eaves, simulate, sweep.

Configuration comes from a YAML file of key-value pairs (``--config``) with
individual flags overriding file values.  Every command can emit one CSV
row per evaluated scenario under a fixed 28-column schema; missing
quantities are empty cells, never dropped columns, and infinite radii are
written as the literal string ``inf``.  The first CSV line echoes the
resolved configuration as a JSON comment so a result file reparses into the
exact run that produced it.

Exit codes: 0 success (including infeasible-but-computed results),
2 malformed configuration, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass

import numpy as np
import yaml

from .bounds_general import QuadratureError, disc_square_overlap
from .model import Case, ProtocolParams
from .montecarlo import EstimateReport, estimate
from .reports import BoundReport, evaluate_bounds

__all__ = ["RunConfig", "SweepSpec", "CSV_HEADER", "main"]

CSV_HEADER = (
    "case,n,m,k,r,tau,gamma_r,gamma_e,alpha,d0,delta,trials,seed,"
    "p_t_hat,p_t_lo,p_t_hi,p_s_hat,p_s_lo,p_s_hi,bound_t,bound_s,"
    "tau_min,tau_max,max_m,jain,entropy,no_candidate_rate,feasible"
)

_SWEEPABLE = ("r", "k", "tau", "n", "m", "gamma_r", "gamma_e")
_INT_PARAMS = ("k", "n", "m")


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional parameter grid: name, endpoints, step count, scale."""

    param: str
    start: float
    stop: float
    steps: int
    scale: str = "linear"

    def __post_init__(self):
        if self.param not in _SWEEPABLE:
            raise ValueError(
                f"sweep.param must be one of {', '.join(_SWEEPABLE)}, got {self.param!r}"
            )
        if self.steps < 1:
            raise ValueError("sweep.steps must be at least 1")
        if self.scale not in ("linear", "log"):
            raise ValueError("sweep.scale must be 'linear' or 'log'")
        if self.scale == "log" and (self.start <= 0 or self.stop <= 0):
            raise ValueError("log-scale sweeps need positive endpoints")

    def values(self):
        if self.steps == 1:
            grid = np.array([self.start], dtype=float)
        elif self.scale == "log":
            grid = np.geomspace(self.start, self.stop, self.steps)
        else:
            grid = np.linspace(self.start, self.stop, self.steps)
        if self.param in _INT_PARAMS:
            return [int(v) for v in dict.fromkeys(int(round(x)) for x in grid)]
        return [float(x) for x in grid]

    def to_dict(self):
        return {
            "param": self.param,
            "from": self.start,
            "to": self.stop,
            "steps": self.steps,
            "scale": self.scale,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepSpec":
        if not isinstance(d, dict):
            raise ValueError("sweep must be a mapping")
        unknown = set(d) - {"param", "from", "to", "steps", "scale"}
        if unknown:
            raise ValueError(f"unknown sweep field {sorted(unknown)[0]!r}")
        if "param" not in d:
            raise ValueError("sweep.param is required")
        for field in ("from", "to"):
            if field not in d:
                raise ValueError(f"sweep.{field} is required")
        return cls(
            param=str(d["param"]),
            start=_as_float(d["from"], "sweep.from"),
            stop=_as_float(d["to"], "sweep.to"),
            steps=_as_int(d.get("steps", 1), "sweep.steps"),
            scale=str(d.get("scale", "linear")),
        )


def _as_float(value, name: str) -> float:
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ValueError(f"field {name!r} must be a number, got {value!r}") from None


def _as_int(value, name: str) -> int:
    try:
        iv = int(value)
    except (TypeError, ValueError):
        raise ValueError(f"field {name!r} must be an integer, got {value!r}") from None
    if isinstance(value, float) and value != iv:
        raise ValueError(f"field {name!r} must be an integer, got {value!r}")
    return iv


_FLOAT_FIELDS = ("r", "tau", "gamma_r", "gamma_e", "alpha", "d0", "es", "eps_t", "eps_s")
_OPT_FLOAT_FIELDS = ("n0", "delta")
_INT_FIELDS = ("n", "m", "k", "trials", "seed")


@dataclass
class RunConfig:
    """Fully resolved run configuration; defaults mirror the worked example scenario."""

    case: str = "equal"
    n: int = 5
    m: int = 1
    k: int = 1
    r: float = math.inf
    tau: float = 0.2
    gamma_r: float = 1.0
    gamma_e: float = math.e - 1.0
    alpha: float = 2.0
    d0: float = 0.05
    es: float = 1.0
    n0: float | None = None
    delta: float | None = None
    eps_t: float = 0.19
    eps_s: float = 0.19
    trials: int = 10000
    seed: int = 1
    exact_region: bool = False
    sweep: SweepSpec | None = None
    out: str | None = None

    def to_dict(self) -> dict:
        d = {}
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if f.name == "sweep":
                d["sweep"] = v.to_dict() if v is not None else None
            elif isinstance(v, float) and math.isinf(v):
                d[f.name] = "inf"
            else:
                d[f.name] = v
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ValueError("configuration must be a mapping of key-value pairs")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config field {sorted(unknown)[0]!r}")
        kwargs = {}
        for name, value in data.items():
            if value is None and name in (
                "n0", "delta", "sweep", "out",
            ):
                kwargs[name] = None
            elif name == "sweep":
                kwargs[name] = SweepSpec.from_dict(value)
            elif name in _FLOAT_FIELDS or name in _OPT_FLOAT_FIELDS:
                kwargs[name] = _as_float(value, name)
            elif name in _INT_FIELDS:
                kwargs[name] = _as_int(value, name)
            elif name == "exact_region":
                kwargs[name] = bool(value)
            else:
                kwargs[name] = value
        cfg = cls(**kwargs)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.case not in ("equal", "general"):
            raise ValueError(f"field 'case' must be 'equal' or 'general', got {self.case!r}")
        if self.trials < 1:
            raise ValueError("field 'trials' must be at least 1")
        if self.seed < 0:
            raise ValueError("field 'seed' must be nonnegative")

    def protocol_params(self, **overrides) -> ProtocolParams:
        vals = dict(
            n=self.n,
            m=self.m,
            k=self.k,
            r=self.r,
            tau=self.tau,
            gamma_r=self.gamma_r,
            gamma_e=self.gamma_e,
            alpha=self.alpha,
            d0=self.d0,
            es=self.es,
            n0=self.n0,
            delta=self.delta,
            case=Case(self.case),
        )
        vals.update(overrides)
        return ProtocolParams(**vals)

    def p_region(self, params: ProtocolParams):
        if self.exact_region and params.is_general and math.isfinite(params.r):
            return disc_square_overlap(params.r)
        return None


def load_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, YAML file values, and explicit CLI flags (in that order)."""
    data: dict = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            loaded = yaml.safe_load(fh)
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise ValueError("config file must contain a mapping of key-value pairs")
        data.update(loaded)
    for name in (
        "case", "n", "m", "k", "r", "tau", "gamma_r", "gamma_e", "alpha",
        "d0", "es", "n0", "delta", "eps_t", "eps_s", "trials", "seed", "out",
    ):
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    if getattr(args, "exact_region", False):
        data["exact_region"] = True
    sweep_param = getattr(args, "sweep_param", None)
    if sweep_param is not None:
        data["sweep"] = {
            "param": sweep_param,
            "from": getattr(args, "sweep_from", None),
            "to": getattr(args, "sweep_to", None),
            "steps": getattr(args, "sweep_steps", None) or 1,
            "scale": getattr(args, "sweep_scale", None) or "linear",
        }
        if data["sweep"]["from"] is None or data["sweep"]["to"] is None:
            raise ValueError("sweep requires --sweep-from and --sweep-to")
    return RunConfig.from_dict(data)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return repr(value)
    return str(value)


def _csv_row(
    fields: dict,
    trials,
    seed,
    est: EstimateReport | None,
    bnd: BoundReport | None,
    error: bool = False,
) -> str:
    cells = [
        _cell(fields.get(name))
        for name in (
            "case", "n", "m", "k", "r", "tau", "gamma_r", "gamma_e",
            "alpha", "d0", "delta",
        )
    ]
    cells.append(_cell(trials if est is not None else None))
    cells.append(_cell(seed if est is not None else None))
    if est is not None:
        cells += [
            _cell(est.p_t_hat), _cell(est.ci_t[0]), _cell(est.ci_t[1]),
            _cell(est.p_s_hat), _cell(est.ci_s[0]), _cell(est.ci_s[1]),
        ]
    else:
        cells += [""] * 6
    if bnd is not None:
        tol = bnd.max_eaves
        cells += [
            _cell(bnd.bound_t),
            _cell(bnd.bound_s.value),
            _cell(bnd.window.tau_min),
            _cell(bnd.window.tau_max),
            _cell(tol.bound if tol is not None else None),
        ]
    else:
        cells += [""] * 5
    if est is not None:
        cells += [_cell(est.jain_index), _cell(est.norm_entropy), _cell(est.no_candidate_rate)]
    else:
        cells += [""] * 3
    if error:
        cells.append("error")
    elif bnd is not None:
        cells.append(_cell(bnd.feasible))
    else:
        cells.append("")
    return ",".join(cells)


def _row_fields(config: RunConfig, params: ProtocolParams | None) -> dict:
    if params is not None:
        return {
            "case": params.case.value, "n": params.n, "m": params.m, "k": params.k,
            "r": params.r, "tau": params.tau, "gamma_r": params.gamma_r,
            "gamma_e": params.gamma_e, "alpha": params.alpha, "d0": params.d0,
            "delta": params.delta,
        }
    return {
        "case": config.case, "n": config.n, "m": config.m, "k": config.k,
        "r": config.r, "tau": config.tau, "gamma_r": config.gamma_r,
        "gamma_e": config.gamma_e, "alpha": config.alpha, "d0": config.d0,
        "delta": config.delta,
    }


def _emit_csv(config: RunConfig, rows: list, stream) -> None:
    print(f"# config: {json.dumps(config.to_dict(), sort_keys=True)}", file=stream)
    print(CSV_HEADER, file=stream)
    for row in rows:
        print(row, file=stream)


def _write_output(config: RunConfig, rows: list, report_text: str | None) -> None:
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="\n") as fh:
            _emit_csv(config, rows, fh)
    if report_text is not None:
        print(report_text)
    elif not config.out:
        _emit_csv(config, rows, sys.stdout)


def parse_config_comment(line: str) -> RunConfig:
    """Reparse the CSV metadata comment back into the RunConfig that wrote it."""
    prefix = "# config: "
    if not line.startswith(prefix):
        raise ValueError("not a config comment line")
    return RunConfig.from_dict(json.loads(line[len(prefix):]))


def _fmt(value) -> str:
    if value is None:
        return "infeasible"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return f"{value:.6g}"
    return str(value)


def _bounds_report_text(bnd: BoundReport) -> str:
    p = bnd.params
    tol = bnd.max_eaves
    lines = [
        f"case={p.case.value} n={p.n} m={p.m} k={p.k} r={_fmt(p.r)} tau={_fmt(p.tau)}",
        f"  gamma_r={_fmt(p.gamma_r)} gamma_e={_fmt(p.gamma_e)} alpha={_fmt(p.alpha)} "
        f"d0={_fmt(p.d0)} delta={_fmt(p.delta)}",
        f"  transmission bound at tau: {_fmt(bnd.bound_t)}",
        f"  secrecy bound at tau:      {_fmt(bnd.bound_s.value)}"
        + ("  [saturated: not a probability]" if bnd.bound_s.saturated else ""),
        f"  tau window for eps_t={bnd.eps_t:g}, eps_s={bnd.eps_s:g}: "
        f"[{_fmt(bnd.window.tau_min)}, {_fmt(bnd.window.tau_max)}]"
        f"  feasible={str(bnd.window.feasible).lower()}",
    ]
    if tol is None:
        lines.append("  tolerable eavesdroppers: infeasible")
    else:
        count = "unbounded" if tol.count is None else str(tol.count)
        lines.append(f"  tolerable eavesdroppers: {_fmt(tol.bound)} (floor {count})")
    return "\n".join(lines)


def _estimate_report_text(est: EstimateReport) -> str:
    return "\n".join(
        [
            f"trials={est.trials} seed={est.seed}",
            f"  P_out(T) = {est.p_t_hat:.6g}  CI95 [{est.ci_t[0]:.6g}, {est.ci_t[1]:.6g}]",
            f"  P_out(S) = {est.p_s_hat:.6g}  CI95 [{est.ci_s[0]:.6g}, {est.ci_s[1]:.6g}]",
            f"  no-candidate rate = {est.no_candidate_rate:.6g}",
            f"  jain = {est.jain_index:.6g}  entropy = {est.norm_entropy:.6g}",
            f"  selection histogram = {est.selection_histogram.tolist()}",
        ]
    )


def cmd_bounds(config: RunConfig, want_report: bool) -> int:
    params = config.protocol_params()
    bnd = evaluate_bounds(params, config.eps_t, config.eps_s, config.p_region(params))
    row = _csv_row(_row_fields(config, params), None, None, None, bnd)
    _write_output(config, [row], _bounds_report_text(bnd) if want_report else None)
    return 0


def cmd_simulate(config: RunConfig, want_report: bool, workers: int = 1) -> int:
    params = config.protocol_params()
    est = estimate(params, config.trials, config.seed, workers=workers)
    row = _csv_row(_row_fields(config, params), config.trials, config.seed, est, None)
    _write_output(config, [row], _estimate_report_text(est) if want_report else None)
    return 0


def cmd_sweep(config: RunConfig, want_report: bool, with_bounds: bool,
              with_sim: bool, workers: int = 1) -> int:
    if config.sweep is None:
        raise ValueError("sweep requires a sweep spec (--sweep-param or config 'sweep')")
    rows = []
    summaries = []
    for value in config.sweep.values():
        point = dataclasses.replace(config, sweep=None, out=None)
        point = dataclasses.replace(point, **{config.sweep.param: value})
        params = None
        est = None
        bnd = None
        error = False
        try:
            params = point.protocol_params()
            if with_bounds:
                bnd = evaluate_bounds(params, point.eps_t, point.eps_s, point.p_region(params))
            if with_sim:
                est = estimate(params, point.trials, point.seed, workers=workers)
        except ValueError:
            error = True
        rows.append(
            _csv_row(
                _row_fields(point, params),
                point.trials if est is not None else None,
                point.seed if est is not None else None,
                est,
                bnd,
                error=error,
            )
        )
        if want_report:
            tag = f"{config.sweep.param}={_fmt(value)}"
            if error:
                summaries.append(f"{tag}: parameter error")
            else:
                parts = []
                if bnd is not None:
                    parts.append(f"bound_t={_fmt(bnd.bound_t)}")
                    parts.append(f"feasible={str(bnd.feasible).lower()}")
                if est is not None:
                    parts.append(f"p_t_hat={est.p_t_hat:.6g}")
                    parts.append(f"jain={est.jain_index:.4g}")
                summaries.append(f"{tag}: " + " ".join(parts))
    _write_output(config, rows, "\n".join(summaries) if want_report else None)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML configuration file")
    common.add_argument("--case", choices=["equal", "general"])
    for name in ("n", "m", "k", "trials", "seed", "workers"):
        common.add_argument(f"--{name}", type=int)
    for flag, dest in (
        ("--r", "r"), ("--tau", "tau"), ("--gamma-r", "gamma_r"),
        ("--gamma-e", "gamma_e"), ("--alpha", "alpha"), ("--d0", "d0"),
        ("--delta", "delta"), ("--es", "es"), ("--n0", "n0"),
        ("--eps-t", "eps_t"), ("--eps-s", "eps_s"),
    ):
        common.add_argument(flag, dest=dest, type=float)
    common.add_argument("--out", help="write the CSV to this path")
    common.add_argument("--exact-region", action="store_true", default=False,
                        help="use the exact disc-square overlap as region probability")
    common.add_argument("--report", action="store_true",
                        help="print a human-readable summary instead of CSV on stdout")

    parser = argparse.ArgumentParser(
        prog="twohopsec",
        description="Bounds and Monte Carlo simulation for a secure two-hop relay protocol",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("bounds", parents=[common], help="evaluate all closed-form bounds")
    sub.add_parser("tau-range", parents=[common],
                   help="admissible jamming-threshold window for the outage targets")
    sub.add_parser("max-eaves", parents=[common],
                   help="tolerable eavesdropper count for the outage targets")
    sub.add_parser("simulate", parents=[common], help="Monte Carlo outage estimation")
    sweep = sub.add_parser("sweep", parents=[common], help="evaluate a parameter grid")
    sweep.add_argument("--sweep-param", choices=list(_SWEEPABLE))
    sweep.add_argument("--sweep-from", type=float)
    sweep.add_argument("--sweep-to", type=float)
    sweep.add_argument("--sweep-steps", type=int)
    sweep.add_argument("--sweep-scale", choices=["linear", "log"])
    sweep.add_argument("--no-bounds", action="store_true", help="skip bound evaluation")
    sweep.add_argument("--no-sim", action="store_true", help="skip Monte Carlo estimation")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args)
        if args.command in ("bounds", "tau-range", "max-eaves"):
            return cmd_bounds(config, args.report)
        workers = args.workers or 1
        if args.command == "simulate":
            return cmd_simulate(config, args.report, workers)
        return cmd_sweep(
            config, args.report, with_bounds=not args.no_bounds,
            with_sim=not args.no_sim, workers=workers,
        )
    except (QuadratureError, FloatingPointError, OverflowError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
