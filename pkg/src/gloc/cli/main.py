"""Command-line front end.

Exit codes: 0 success, 2 configuration/usage error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from ..analytic import is_divergent, link_metrics, mean_interference, optimal_power
from ..errors import (
    ConfigError,
    ConstraintViolation,
    DensityInfeasible,
    DomainError,
    GlocError,
    PrecisionLoss,
    QuadratureNotConverged,
    RejectionOverflow,
)
from ..montecarlo import Metric, SimMode, estimate
from ..scenario import (
    ConfigBundle,
    Scheme,
    apply_overrides,
    linear_to_db,
    load_config,
    noise_limited,
)
from . import presets, sweeps
from .sweeps import CSV_HEADER, OPT_CSV_HEADER, SweepSpec, fmt

_USAGE_ERRORS = (ConfigError, ConstraintViolation, DomainError)
_NUMERIC_ERRORS = (PrecisionLoss, QuadratureNotConverged, RejectionOverflow, DensityInfeasible)
_SCHEME = {"slp": Scheme.SLP, "mlp": Scheme.MLP}


def _default_seed() -> int:
    env = os.environ.get("GLOC_SEED")
    return int(env) if env else 0


def _add_common(p: argparse.ArgumentParser, scheme_default: str | None = None) -> None:
    p.add_argument("--config", type=Path, help="scenario file (key = value); defaults built in")
    p.add_argument("--scheme", choices=("slp", "mlp"), default=scheme_default)
    p.add_argument("--traffic", choices=("periodic", "non-periodic"), default="non-periodic")
    p.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                   help="override a config key (dB-suffixed keys accepted)")
    p.add_argument("--sigma-n2-dbm-hz", type=float, default=None)
    p.add_argument("--p-a", type=float, default=None)
    p.add_argument("--seed", type=int, default=None, help="default from GLOC_SEED, else 0")
    p.add_argument("--out", type=Path, default=None)


def _bundle_from_args(args) -> ConfigBundle:
    bundle = load_config(args.config) if args.config else ConfigBundle()
    overrides: dict = {}
    for item in args.overrides:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        key, _, raw = item.partition("=")
        overrides[key.strip()] = raw.strip()
    if args.sigma_n2_dbm_hz is not None:
        overrides["sigma_n2_dbm_hz"] = args.sigma_n2_dbm_hz
    if getattr(args, "p_a", None) is not None:
        overrides["p_a"] = args.p_a
    return apply_overrides(bundle, overrides)


def _traffic_key(args) -> str:
    return "non_periodic" if args.traffic == "non-periodic" else "periodic"


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


def cmd_analyze(args) -> int:
    bundle = _bundle_from_args(args)
    cfg = bundle.scenario
    scheme = _SCHEME[args.scheme]
    tm = bundle.traffic(_traffic_key(args))
    metrics = link_metrics(cfg, scheme, tm)
    cap = metrics.capture
    mi = mean_interference(cfg.r_bc, 0.0, scheme, cfg, tm)
    nl = noise_limited(cfg)
    flags = []
    if is_divergent(mi):
        flags.append("divergent")
    if not cap.weights_ok:
        flags.append("weights_renormalized")

    if args.format == "csv":
        row = [
            "none", "", args.scheme, _traffic_key(args),
            fmt(cap.value), "", "",
            "inf" if is_divergent(mi) else fmt(mi),
            fmt(metrics.avg_br_bps), fmt(metrics.avg_ee_bpj),
            ";".join(flags),
        ]
        _emit(CSV_HEADER + "\n" + ",".join(row) + "\n", args.out)
        return 0

    lines = [
        f"scheme                    {args.scheme}",
        f"traffic                   {_traffic_key(args)}",
        f"capture_probability       {cap.value:.6f}",
        f"mean_interference_mw_hz   {'divergent' if is_divergent(mi) else format(mi, '.6e')}",
        f"avg_br_bps                {metrics.avg_br_bps:.6e}",
        f"avg_ee_bpj                {metrics.avg_ee_bpj:.6e}",
        f"noise_limited             {str(nl).lower()}",
    ]
    if not cap.weights_ok:
        lines.append(f"weight_integral           {cap.weight_integral:.6f}")
        lines.append(f"capture_renormalized      {cap.renormalized:.6f}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_sweep(args) -> int:
    if args.out is None:
        raise ConfigError("sweep requires --out")
    seed = args.seed if args.seed is not None else _default_seed()
    if args.from_record:
        sweeps.rerun_from_record(args.from_record, args.out, workers=args.workers)
        return 0
    bundle = _bundle_from_args(args)
    if args.values:
        values = tuple(float(v) for v in args.values.split(","))
    elif args.start is not None and args.stop is not None and args.count:
        values = sweeps.grid_values(args.start, args.stop, args.count, args.scale)
    else:
        raise ConfigError("sweep needs --values or --start/--stop/--count")
    spec = SweepSpec(
        variable=args.variable,
        values=values,
        schemes=tuple(args.schemes.split(",")),
        traffics=tuple(t.replace("-", "_") for t in args.traffics.split(",")),
        with_mc=args.with_mc,
        n_realizations=args.n_realizations,
        seed=seed,
        mode=args.mode.replace("-", "_"),
    )
    sweeps.run_sweep_to_csv(spec, bundle, args.out, workers=args.workers)
    return 0


def cmd_simulate(args) -> int:
    bundle = _bundle_from_args(args)
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = bundle.scenario
    scheme = _SCHEME[args.scheme]
    tm = bundle.traffic(_traffic_key(args))
    metric = Metric(args.metric.replace("-", "_"))
    mode = SimMode(args.mode.replace("-", "_"))
    est = estimate(metric, cfg, scheme, tm, mode, args.n_realizations, seed)
    if args.format == "csv":
        text = (
            "metric,scheme,traffic,mode,mean,std_error,n_samples,seed\n"
            f"{metric.value},{args.scheme},{_traffic_key(args)},{mode.value},"
            f"{fmt(est.mean)},{fmt(est.std_error)},{est.n_samples},{est.seed}\n"
        )
    else:
        text = (
            f"metric       {metric.value}\n"
            f"mean         {est.mean:.6e}\n"
            f"std_error    {est.std_error:.6e}\n"
            f"n_samples    {est.n_samples}\n"
            f"seed         {est.seed}\n"
        )
    _emit(text, args.out)
    return 0


def cmd_optimize(args) -> int:
    bundle = _bundle_from_args(args)
    deltas = tuple(float(d) for d in args.deltas.split(","))
    rows = sweeps.optimize_rows(deltas, bundle, args.scheme, _traffic_key(args))
    text = OPT_CSV_HEADER + "\n" + "".join(",".join(r) + "\n" for r in rows)
    if args.out is not None:
        data = sweeps.write_csv(args.out, OPT_CSV_HEADER, rows)
        record = sweeps.RunRecord(
            kind="optimize",
            seed=0,
            config=bundle.as_dict(),
            spec={"deltas": list(deltas), "scheme": args.scheme, "traffic": _traffic_key(args)},
            outputs={str(args.out): sweeps.sha256(data)},
            rows=len(rows),
        )
        sweeps.write_run_record(record, args.out.with_suffix(args.out.suffix + ".run.json"))
    else:
        sys.stdout.write(text)
    return 0


def cmd_reproduce(args) -> int:
    if args.out is None:
        raise ConfigError("reproduce requires --out")
    bundle = _bundle_from_args(args)
    seed = args.seed if args.seed is not None else _default_seed()
    presets.run_figure(
        args.figure,
        bundle,
        args.out,
        with_mc=args.with_mc,
        n_realizations=args.n_realizations,
        seed=seed,
        workers=args.workers,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gloc",
        description="Geo-location based access: analytic metrics, Monte Carlo validation, sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="single-point analytic report")
    _add_common(p, scheme_default="mlp")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="sweep one variable to CSV")
    _add_common(p)
    p.add_argument("--variable", choices=sweeps.SWEEP_VARIABLES)
    p.add_argument("--values", help="comma-separated explicit values")
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--count", type=int)
    p.add_argument("--scale", choices=("linear", "log"), default="linear")
    p.add_argument("--schemes", default="slp,mlp")
    p.add_argument("--traffics", default="periodic,non-periodic")
    p.add_argument("--with-mc", action="store_true")
    p.add_argument("--n-realizations", type=int, default=10_000)
    p.add_argument("--mode", choices=("model-faithful", "ground-truth"), default="model-faithful")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--from-record", type=Path, help="replay a sweep run record")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="Monte Carlo estimate of one metric")
    _add_common(p, scheme_default="mlp")
    p.add_argument("--metric", choices=("capture", "mean-interference", "br", "ee"),
                   default="capture")
    p.add_argument("--mode", choices=("model-faithful", "ground-truth"), default="model-faithful")
    p.add_argument("--n-realizations", type=int, default=10_000)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("optimize", help="EE-optimal power for one or more capture floors")
    _add_common(p, scheme_default="mlp")
    p.add_argument("--deltas", default="0.99", help="comma-separated capture floors in (0,1)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("reproduce", help="regenerate a pinned figure grid")
    _add_common(p)
    p.add_argument("--figure", type=int, required=True, choices=presets.FIGURE_IDS)
    p.add_argument("--with-mc", action="store_true")
    p.add_argument("--n-realizations", type=int, default=10_000)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _NUMERIC_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
