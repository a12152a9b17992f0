"""Monte Carlo estimation of the link metrics over spatial realizations.

Each realization i draws from its own counter-based stream keyed by
(seed, i), so estimates are bit-identical no matter how realizations are
scheduled, and accumulation uses numpy's pairwise summation so the reduction
is robust to ordering too.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ..scenario import ScenarioConfig, Scheme, TrafficModel, activity_probability, derive_scheme
from .snapshot import SimMode, realize_snapshot

__all__ = ["Metric", "MetricEstimate", "estimate", "realization_rng", "empirical_laplace"]


class Metric(enum.Enum):
    CAPTURE = "capture"
    MEAN_INTERFERENCE = "mean_interference"
    BR = "br"
    EE = "ee"


@dataclass(frozen=True)
class MetricEstimate:
    """Sample mean with its standard error."""

    mean: float
    std_error: float
    n_samples: int
    seed: int


def realization_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for realization `index` under a master seed."""
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(index)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _finish(samples: np.ndarray, seed: int) -> MetricEstimate:
    mean = float(np.mean(samples))
    std_error = float(np.std(samples, ddof=1) / math.sqrt(samples.size))
    return MetricEstimate(mean=mean, std_error=std_error, n_samples=samples.size, seed=seed)


def estimate(
    metric: Metric,
    cfg: ScenarioConfig,
    scheme: Scheme,
    tm: TrafficModel,
    mode: SimMode,
    n_realizations: int,
    seed: int,
) -> MetricEstimate:
    """Estimate a link metric by averaging independent spatial realizations."""
    if n_realizations < 100:
        raise ValueError(f"need at least 100 realizations, got {n_realizations}")
    sd = derive_scheme(cfg, scheme)
    spectral_eff = math.log2(1.0 + cfg.gamma)
    samples = np.empty(n_realizations)
    for i in range(n_realizations):
        snap = realize_snapshot(cfg, scheme, tm, mode, realization_rng(seed, i))
        if metric is Metric.MEAN_INTERFERENCE:
            samples[i] = snap.interference(cfg)
            continue
        captured = snap.sinr(cfg) > cfg.gamma
        if metric is Metric.CAPTURE:
            samples[i] = captured
        elif metric is Metric.BR:
            samples[i] = captured * sd.b_ar * spectral_eff
        else:
            samples[i] = captured * spectral_eff / (cfg.rho_vt * 1e-3)
    return _finish(samples, seed)


def pinned_interference_samples(
    x: float,
    v: float,
    scheme: Scheme,
    cfg: ScenarioConfig,
    tm: TrafficModel,
    n_realizations: int,
    seed: int,
) -> np.ndarray:
    """Aggregate interference draws at a fixed receiver x and probe v.

    Realizes the model-faithful process (Poisson interferers plus the
    per-lane exclusion gaps around probe and receiver); used as the Monte
    Carlo oracle for the closed-form transform and the mean interference.
    """
    from .sampling import sample_ppp
    from .snapshot import Snapshot, _active_interferers, window_half_width

    if n_realizations < 100:
        raise ValueError(f"need at least 100 realizations, got {n_realizations}")
    sd = derive_scheme(cfg, scheme)
    p_a = activity_probability(cfg, sd, tm)
    half = window_half_width(cfg)
    samples = np.empty(n_realizations)
    for i in range(n_realizations):
        rng = realization_rng(seed, i)
        base = sample_ppp((-half, half), sd.lambda_abs * p_a, rng)
        pts = _active_interferers(base, x, v, scheme, SimMode.MODEL_FAITHFUL, cfg)
        fading = rng.exponential(1.0, pts.size)
        snap = Snapshot(probe_tx=v, receiver=x, positions=pts, fading=fading, probe_fading=1.0)
        samples[i] = snap.interference(cfg)
    return samples


def empirical_laplace(
    s: float,
    x: float,
    v: float,
    scheme: Scheme,
    cfg: ScenarioConfig,
    tm: TrafficModel,
    n_realizations: int,
    seed: int,
) -> MetricEstimate:
    """Estimate E[exp(-s I(x))] with the probe transmitter pinned at v."""
    draws = pinned_interference_samples(x, v, scheme, cfg, tm, n_realizations, seed)
    return _finish(np.exp(-s * draws), seed)


def empirical_mean_interference(
    x: float,
    v: float,
    scheme: Scheme,
    cfg: ScenarioConfig,
    tm: TrafficModel,
    n_realizations: int,
    seed: int,
) -> MetricEstimate:
    """Estimate E[I(x)] with the probe transmitter pinned at v."""
    draws = pinned_interference_samples(x, v, scheme, cfg, tm, n_realizations, seed)
    return _finish(draws, seed)
