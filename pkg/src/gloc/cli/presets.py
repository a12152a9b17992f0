"""Pinned sweep grids for regenerating the evaluation figures.

Each preset expands to one or more jobs; multi-series figures whose series
differ by configuration (not just by scheme/traffic columns) emit one CSV
per series, suffixed on the output stem.  All grids are fixed here so a
figure regenerates bit-identically from its run record.
"""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from ..errors import ConfigError
from ..scenario import ConfigBundle, apply_overrides
from .sweeps import (
    CSV_HEADER,
    OPT_CSV_HEADER,
    RunRecord,
    SweepSpec,
    optimize_rows,
    sha256,
    sweep_rows,
    write_csv,
    write_run_record,
)

__all__ = ["FIGURE_IDS", "figure_jobs", "run_figure", "rerun_reproduce_record"]


@dataclass(frozen=True)
class PresetJob:
    suffix: str
    kind: str  # "sweep" | "optimize"
    overrides: dict = field(default_factory=dict)
    spec: Optional[SweepSpec] = None
    scheme: str = "mlp"
    traffic: str = "non_periodic"
    deltas: tuple = (0.99,)
    gamma_db_values: Optional[tuple] = None


def _steps(start: float, stop: float, step: float) -> tuple:
    out = []
    v = start
    while v <= stop + 1e-9:
        out.append(round(v, 9))
        v += step
    return tuple(out)


_GAMMA_GRID = _steps(-10, 20, 1)
_OPT_GAMMA_GRID = _steps(-5, 20, 1)
_NAR_GRID = tuple(float(n) for n in range(1, 101))
_NAR_LOG_GRID = (
    100., 130., 170., 220., 280., 360., 460., 600., 770., 1000.,
    1300., 1700., 2200., 2800., 3600., 4600., 6000., 7700., 10000.,
)
_RHO_GRID = _steps(-90, -30, 2)


def figure_jobs(figure: int, with_mc: bool, n_realizations: int, seed: int) -> tuple[str, list[PresetJob]]:
    """(description, jobs) for one figure preset."""

    def sweep(variable, values, schemes=("slp", "mlp"), traffics=("periodic", "non_periodic"),
              mc=False):
        return SweepSpec(
            variable=variable,
            values=tuple(values),
            schemes=schemes,
            traffics=traffics,
            with_mc=mc and with_mc,
            n_realizations=n_realizations,
            seed=seed,
        )

    def per_series_optimize(gamma_grid):
        return [
            PresetJob(
                suffix=f"__{scheme}_{traffic}",
                kind="optimize",
                scheme=scheme,
                traffic=traffic,
                deltas=(0.99,),
                gamma_db_values=gamma_grid,
            )
            for scheme in ("slp", "mlp")
            for traffic in ("periodic", "non_periodic")
        ]

    if figure == 4:
        return "capture vs SINR threshold", [
            PresetJob("", "sweep", spec=sweep("gamma_db", _GAMMA_GRID, mc=True))
        ]
    if figure == 5:
        return "average BR vs SINR threshold", [
            PresetJob("", "sweep", spec=sweep("gamma_db", _GAMMA_GRID))
        ]
    if figure == 6:
        return "capture vs activity probability", [
            PresetJob("", "sweep", spec=sweep("p_a", _steps(0.05, 1.0, 0.05),
                                              traffics=("non_periodic",), mc=True))
        ]
    if figure == 7:
        return "capture vs number of access resources", [
            PresetJob("", "sweep", spec=sweep("n_ar", _NAR_GRID, mc=True))
        ]
    if figure == 8:
        return "maximum capture (no-noise) vs number of access resources", [
            PresetJob("", "sweep", overrides={"sigma_n2": 0.0},
                      spec=sweep("n_ar", _NAR_LOG_GRID, schemes=("mlp",)))
        ]
    if figure == 9:
        return "average BR vs number of access resources", [
            PresetJob("", "sweep", spec=sweep("n_ar", _NAR_GRID))
        ]
    if figure == 10:
        return "capture at the EE-optimal power vs SINR threshold", per_series_optimize(_OPT_GAMMA_GRID)
    if figure == 11:
        xs = _steps(-105, 105, 1)
        base = {"n_ar": 3, "n_lanes": 1}
        return "mean interference vs receiver position", [
            PresetJob("__slp_ds0", "sweep", overrides={**base, "d_safe": 0.0},
                      spec=sweep("x", xs, schemes=("slp",), traffics=("non_periodic",))),
            PresetJob("__mlp_ds21", "sweep", overrides={**base, "d_safe": 21.0},
                      spec=sweep("x", xs, schemes=("mlp",), traffics=("non_periodic",))),
            PresetJob("__mlp_ds42", "sweep", overrides={**base, "d_safe": 42.0},
                      spec=sweep("x", xs, schemes=("mlp",), traffics=("non_periodic",))),
        ]
    if figure == 12:
        return "capture vs broadcast distance", [
            PresetJob("", "sweep", spec=sweep("r_bc", _steps(50, 500, 25), mc=True))
        ]
    if figure == 13:
        return "capture vs segment length", [
            PresetJob("", "sweep", spec=sweep("d_segment", _steps(6, 120, 6), mc=True))
        ]
    if figure == 14:
        return "capture vs transmit power density", [
            PresetJob("", "sweep", spec=sweep("rho_vt_dbm_hz", _RHO_GRID, mc=True))
        ]
    if figure == 15:
        return "average EE vs transmit power density", [
            PresetJob("", "sweep", spec=sweep("rho_vt_dbm_hz", _RHO_GRID))
        ]
    if figure == 16:
        return "optimal EE vs optimal power (per SINR threshold)", per_series_optimize(_OPT_GAMMA_GRID)
    raise ConfigError(f"unknown figure {figure}; presets cover 4..16")


FIGURE_IDS = tuple(range(4, 17))


def _job_out(out: Path, suffix: str) -> Path:
    if not suffix:
        return out
    return out.with_name(out.stem + suffix + out.suffix)


def run_figure(
    figure: int,
    bundle: ConfigBundle,
    out: Path,
    with_mc: bool = False,
    n_realizations: int = 10_000,
    seed: int = 0,
    workers: int = 1,
) -> RunRecord:
    """Evaluate a figure preset, writing its CSV(s) plus one run record."""
    t0 = time.perf_counter()
    description, jobs = figure_jobs(figure, with_mc, n_realizations, seed)
    outputs: dict[str, str] = {}
    total_rows = 0
    for job in jobs:
        job_bundle = apply_overrides(bundle, job.overrides)
        path = _job_out(out, job.suffix)
        if job.kind == "sweep":
            rows = sweep_rows(job.spec, job_bundle, workers=workers)
            data = write_csv(path, CSV_HEADER, rows)
        else:
            rows = optimize_rows(job.deltas, job_bundle, job.scheme, job.traffic,
                                 gamma_db_values=job.gamma_db_values)
            data = write_csv(path, OPT_CSV_HEADER, rows)
        outputs[str(path)] = sha256(data)
        total_rows += len(rows)
    record = RunRecord(
        kind="reproduce",
        seed=seed,
        config=bundle.as_dict(),
        spec={
            "figure": figure,
            "description": description,
            "with_mc": with_mc,
            "n_realizations": n_realizations,
            "out": str(out),
        },
        outputs=outputs,
        rows=total_rows,
        wall_clock_s=time.perf_counter() - t0,
    )
    write_run_record(record, out.with_suffix(out.suffix + ".run.json"))
    return record


def rerun_reproduce_record(record: dict, out: Path, workers: int = 1) -> RunRecord:
    from ..scenario import config_from_dict

    bundle = config_from_dict(record["config"])
    spec = record["spec"]
    return run_figure(
        spec["figure"],
        bundle,
        out,
        with_mc=spec["with_mc"],
        n_realizations=spec["n_realizations"],
        seed=record["seed"],
        workers=workers,
    )
