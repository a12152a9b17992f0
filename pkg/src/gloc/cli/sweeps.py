"""Parameter sweeps, CSV emission and reproducible run records.

Every CSV uses one fixed header so downstream tooling never needs
per-figure schemas; a JSON sidecar (the run record) captures the resolved
configuration, sweep definition and seed so the exact bytes can be
regenerated later.
"""
from __future__ import annotations

import concurrent.futures
import hashlib
import json
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .. import __version__
from ..analytic import capture_probability, is_divergent, link_metrics, mean_interference, optimal_power
from ..errors import ConfigError, GlocError
from ..montecarlo import Metric, SimMode, estimate
from ..scenario import ConfigBundle, ScenarioConfig, Scheme, db_to_linear, linear_to_db

__all__ = [
    "CSV_HEADER",
    "OPT_CSV_HEADER",
    "SweepSpec",
    "RunRecord",
    "sweep_rows",
    "optimize_rows",
    "write_csv",
    "write_run_record",
    "rerun_from_record",
    "fmt",
]

CSV_HEADER = (
    "variable,value,scheme,traffic,capture_analytic,capture_mc,capture_mc_se,"
    "mean_interference_mw_hz,avg_br_bps,avg_ee_bpj,flag"
)
OPT_CSV_HEADER = "delta,gamma,rho_opt_dbm_hz,ee_opt,capture_at_opt,c1,c2"

SWEEP_VARIABLES = ("gamma_db", "p_a", "n_ar", "r_bc", "d_segment", "rho_vt_dbm_hz", "x")
_SCHEMES = {"slp": Scheme.SLP, "mlp": Scheme.MLP}
_TRAFFICS = ("periodic", "non_periodic")


def fmt(value) -> str:
    """Stable shortest-ish float formatting for reproducible CSV bytes."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if math.isinf(value):
        return "inf"
    return format(float(value), ".12g")


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable evaluated over a scheme x traffic grid."""

    variable: str
    values: tuple
    schemes: tuple = ("slp", "mlp")
    traffics: tuple = ("periodic", "non_periodic")
    with_mc: bool = False
    n_realizations: int = 10_000
    seed: int = 0
    mode: str = "model_faithful"

    def __post_init__(self) -> None:
        if self.variable not in SWEEP_VARIABLES:
            raise ConfigError(
                f"unknown sweep variable {self.variable!r}; choose from {SWEEP_VARIABLES}"
            )
        if not self.values:
            raise ConfigError("sweep needs at least one value")
        diffs = np.diff(np.asarray(self.values, dtype=float))
        if len(self.values) > 1 and not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise ConfigError("sweep values must be strictly monotone")
        for s in self.schemes:
            if s not in _SCHEMES:
                raise ConfigError(f"unknown scheme {s!r}")
        for t in self.traffics:
            if t not in _TRAFFICS:
                raise ConfigError(f"unknown traffic kind {t!r}")
        if self.variable == "p_a" and "periodic" in self.traffics:
            raise ConfigError("p_a sweeps apply to non_periodic traffic only")


def grid_values(start: float, stop: float, count: int, scale: str = "linear") -> tuple:
    if count < 1:
        raise ConfigError("count must be >= 1")
    if scale == "linear":
        vals = np.linspace(start, stop, count)
    elif scale == "log":
        if start <= 0 or stop <= 0:
            raise ConfigError("log scale needs positive bounds")
        vals = np.geomspace(start, stop, count)
    else:
        raise ConfigError(f"unknown scale {scale!r}")
    return tuple(float(v) for v in vals)


def apply_variable(bundle: ConfigBundle, variable: str, value: float) -> ConfigBundle:
    """Resolved config for one sweep point (dB handled here, not downstream)."""
    cfg = bundle.scenario
    if variable == "gamma_db":
        cfg = cfg.with_(gamma=db_to_linear(value))
    elif variable == "p_a":
        return ConfigBundle(cfg, p_a=float(value), m_bc=bundle.m_bc, t_rep=bundle.t_rep)
    elif variable == "n_ar":
        cfg = cfg.with_(n_ar=int(round(value)))
    elif variable == "r_bc":
        cfg = cfg.with_(r_bc=float(value))
    elif variable == "d_segment":
        cfg = cfg.with_(d_segment=float(value))
    elif variable == "rho_vt_dbm_hz":
        cfg = cfg.with_(rho_vt=db_to_linear(value))
    elif variable == "x":
        pass  # receiver-position sweeps leave the scenario untouched
    else:
        raise ConfigError(f"unknown sweep variable {variable!r}")
    return ConfigBundle(cfg, p_a=bundle.p_a, m_bc=bundle.m_bc, t_rep=bundle.t_rep)


def _point_seed(master: int, index: int) -> int:
    return int(np.random.SeedSequence([master & 0xFFFFFFFFFFFFFFFF, index]).generate_state(1)[0])


def _row_for_point(args) -> list[str]:
    spec, bundle, index, value, scheme_name, traffic_name = args
    flags: list[str] = []
    cells = {
        "variable": spec.variable,
        "value": fmt(value),
        "scheme": scheme_name,
        "traffic": traffic_name,
        "capture_analytic": "",
        "capture_mc": "",
        "capture_mc_se": "",
        "mean_interference_mw_hz": "",
        "avg_br_bps": "",
        "avg_ee_bpj": "",
    }
    try:
        point = apply_variable(bundle, spec.variable, value)
        cfg = point.scenario
        scheme = _SCHEMES[scheme_name]
        tm = point.traffic(traffic_name)

        mi_x = value if spec.variable == "x" else cfg.r_bc
        mi = mean_interference(mi_x, 0.0, scheme, cfg, tm)
        if is_divergent(mi):
            cells["mean_interference_mw_hz"] = "inf"
            flags.append("divergent")
        else:
            cells["mean_interference_mw_hz"] = fmt(mi)

        if spec.variable != "x":
            metrics = link_metrics(cfg, scheme, tm)
            cap = metrics.capture
            cells["capture_analytic"] = fmt(cap.value)
            cells["avg_br_bps"] = fmt(metrics.avg_br_bps)
            cells["avg_ee_bpj"] = fmt(metrics.avg_ee_bpj)
            if not cap.weights_ok:
                flags.append("weights_renormalized")
            if spec.with_mc:
                est = estimate(
                    Metric.CAPTURE,
                    cfg,
                    scheme,
                    tm,
                    SimMode(spec.mode),
                    spec.n_realizations,
                    _point_seed(spec.seed, index),
                )
                cells["capture_mc"] = fmt(est.mean)
                cells["capture_mc_se"] = fmt(est.std_error)
                if abs(cap.value - est.mean) > 3.0 * est.std_error:
                    flags.append("mc_outside_3se")
    except GlocError as exc:
        flags.append(f"error:{type(exc).__name__}")
    cells["flag"] = ";".join(flags)
    return [cells[k] for k in CSV_HEADER.split(",")]


def sweep_rows(spec: SweepSpec, bundle: ConfigBundle, workers: int = 1) -> list[list[str]]:
    """Evaluate every (value, scheme, traffic) point, rows in input order."""
    jobs = []
    index = 0
    for value in spec.values:
        for scheme_name in spec.schemes:
            for traffic_name in spec.traffics:
                jobs.append((spec, bundle, index, value, scheme_name, traffic_name))
                index += 1
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_row_for_point, jobs))
    return [_row_for_point(job) for job in jobs]


def optimize_rows(
    deltas: Sequence[float],
    bundle: ConfigBundle,
    scheme_name: str,
    traffic_name: str,
    gamma_db_values: Optional[Sequence[float]] = None,
) -> list[list[str]]:
    """Optimal-power table: one row per delta (or per gamma at fixed delta)."""
    scheme = _SCHEMES[scheme_name]
    rows = []
    if gamma_db_values is None:
        points = [(d, bundle) for d in deltas]
    else:
        if len(deltas) != 1:
            raise ConfigError("gamma sweeps take exactly one delta")
        points = [
            (deltas[0], apply_variable(bundle, "gamma_db", g)) for g in gamma_db_values
        ]
    for delta, point in points:
        cfg = point.scenario
        tm = point.traffic(traffic_name)
        res = optimal_power(delta, cfg, scheme, tm)
        rows.append([
            fmt(res.delta),
            fmt(cfg.gamma),
            fmt(linear_to_db(res.rho_opt)),
            fmt(res.ee_opt),
            fmt(res.capture_at_opt),
            fmt(res.c1),
            fmt(res.c2),
        ])
    return rows


def write_csv(path: Path, header: str, rows: list[list[str]]) -> bytes:
    text = header + "\n" + "".join(",".join(row) + "\n" for row in rows)
    data = text.encode()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    return data


@dataclass
class RunRecord:
    """Everything needed to regenerate a CSV bit-identically."""

    kind: str
    seed: int
    config: dict
    spec: dict
    outputs: dict = field(default_factory=dict)  # csv path -> sha256
    rows: int = 0
    wall_clock_s: float = 0.0
    artifact: str = "gloc"
    version: str = __version__


def write_run_record(record: RunRecord, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(asdict(record), indent=2, sort_keys=True) + "\n")


def sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def run_sweep_to_csv(
    spec: SweepSpec, bundle: ConfigBundle, out: Path, workers: int = 1
) -> RunRecord:
    t0 = time.perf_counter()
    rows = sweep_rows(spec, bundle, workers=workers)
    data = write_csv(out, CSV_HEADER, rows)
    record = RunRecord(
        kind="sweep",
        seed=spec.seed,
        config=bundle.as_dict(),
        spec=asdict(spec),
        outputs={str(out): sha256(data)},
        rows=len(rows),
        wall_clock_s=time.perf_counter() - t0,
    )
    write_run_record(record, out.with_suffix(out.suffix + ".run.json"))
    return record


def rerun_from_record(record_path: Path, out: Path, workers: int = 1) -> RunRecord:
    """Replay a sweep run record into a fresh CSV."""
    raw = json.loads(Path(record_path).read_text())
    if raw.get("kind") != "sweep":
        raise ConfigError(f"run record {record_path} is not a sweep record")
    from ..scenario import config_from_dict

    bundle = config_from_dict(raw["config"])
    spec_dict = dict(raw["spec"])
    spec_dict["values"] = tuple(spec_dict["values"])
    spec_dict["schemes"] = tuple(spec_dict["schemes"])
    spec_dict["traffics"] = tuple(spec_dict["traffics"])
    spec = SweepSpec(**spec_dict)
    return run_sweep_to_csv(spec, bundle, out, workers=workers)
