"""Spatial snapshots of the vehicle process around the probe link.

Two fidelity levels exist for the per-lane scheme: the model-faithful mode
realizes the tractable approximation exactly (Poisson interferers with
hard-core gaps enforced only around the probe transmitter and receiver),
while the ground-truth mode samples the true mark-thinned hard-core process
and conditions the probe position on it by joint rejection.  For the
whole-road scheme both modes coincide with a plain Poisson process.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ..errors import RejectionOverflow
from ..scenario import (
    ScenarioConfig,
    Scheme,
    TrafficModel,
    activity_probability,
    derive_scheme,
)
from .sampling import sample_matern2, sample_ppp

__all__ = ["SimMode", "Snapshot", "realize_snapshot", "window_half_width"]

_MAX_PLACEMENT_TRIES = 10_000


class SimMode(enum.Enum):
    MODEL_FAITHFUL = "model_faithful"
    GROUND_TRUTH = "ground_truth"


@dataclass(frozen=True)
class Snapshot:
    """One spatial realization: probe link plus active co-channel interferers."""

    probe_tx: float
    receiver: float
    positions: np.ndarray
    fading: np.ndarray
    probe_fading: float

    @property
    def interferers(self) -> list[tuple[float, float]]:
        return list(zip(self.positions.tolist(), self.fading.tolist()))

    def interference(self, cfg: ScenarioConfig) -> float:
        """Aggregate interference power density (mW/Hz) at the receiver."""
        if self.positions.size == 0:
            return 0.0
        dist = np.abs(self.positions - self.receiver)
        return float(np.sum(self.fading * (cfg.tau * dist) ** -cfg.alpha) * cfg.rho_vt)

    def sinr(self, cfg: ScenarioConfig) -> float:
        signal = self.probe_fading * (cfg.tau * cfg.r_bc) ** -cfg.alpha * cfg.rho_vt
        denom = self.interference(cfg) + cfg.sigma_n2
        return signal / denom if denom > 0 else np.inf


def window_half_width(cfg: ScenarioConfig) -> float:
    """Half-width of the sampling window: communication range plus two
    co-channel periods of margin so edge truncation cannot bias the
    in-range interference."""
    return cfg.d_max + 2.0 * cfg.n_ar * cfg.d_segment


def _cochannel_mask(y: np.ndarray, cfg: ScenarioConfig) -> np.ndarray:
    """Membership of the union of segments sharing the probe AR."""
    period = cfg.n_ar * cfg.d_segment
    frac = np.mod(y + cfg.d_segment / 2.0, period)
    return frac < cfg.d_segment


def _active_interferers(
    base: np.ndarray,
    x: float,
    v: float,
    scheme: Scheme,
    mode: SimMode,
    cfg: ScenarioConfig,
) -> np.ndarray:
    """Apply the co-channel/range masks of the chosen scheme and mode."""
    keep = _cochannel_mask(base, cfg)
    keep &= np.abs(base - x) <= cfg.d_max
    if scheme is Scheme.MLP and mode is SimMode.MODEL_FAITHFUL and cfg.d_safe > 0:
        keep &= np.abs(base - x) > cfg.d_safe
        keep &= np.abs(base - v) > cfg.d_safe
    return base[keep]


def sample_conditioned_process(
    cfg: ScenarioConfig,
    scheme: Scheme,
    mode: SimMode,
    rng: np.random.Generator,
) -> tuple[np.ndarray, float]:
    """Vehicle process plus a probe position uniform over the probe segment.

    Ground-truth per-lane sampling redraws (process, position) jointly until
    the probe respects the hard-core distance to every sampled vehicle, which
    approximates conditioning the hard-core process on a point in the probe
    segment.  Raises RejectionOverflow when the geometry never admits one.
    """
    sd = derive_scheme(cfg, scheme)
    half = window_half_width(cfg)
    window = (-half, half)
    hardcore = mode is SimMode.GROUND_TRUTH and scheme is Scheme.MLP and cfg.d_safe > 0
    for _ in range(_MAX_PLACEMENT_TRIES):
        if hardcore:
            pts = sample_matern2(window, sd.lambda_abs, cfg.d_safe, rng)
        else:
            pts = sample_ppp(window, sd.lambda_abs, rng)
        v = rng.uniform(-cfg.d_segment / 2.0, cfg.d_segment / 2.0)
        if not hardcore or pts.size == 0 or np.min(np.abs(pts - v)) >= cfg.d_safe:
            return pts, v
    raise RejectionOverflow(
        f"no admissible probe placement in {_MAX_PLACEMENT_TRIES} attempts "
        f"(lambda={sd.lambda_abs!r}, d_safe={cfg.d_safe!r})"
    )


def realize_snapshot(
    cfg: ScenarioConfig,
    scheme: Scheme,
    tm: TrafficModel,
    mode: SimMode,
    rng: np.random.Generator,
) -> Snapshot:
    """Draw one spatial realization of the probe link.

    Model-faithful mode samples the active process directly at density
    lambda_abs * p_a; ground-truth mode thins the full vehicle process by the
    activity probability after hard-core retention.
    """
    sd = derive_scheme(cfg, scheme)
    p_a = activity_probability(cfg, sd, tm)

    if mode is SimMode.MODEL_FAITHFUL:
        # plain Poisson: activity thinning folds into the sampling density
        half = window_half_width(cfg)
        base = sample_ppp((-half, half), sd.lambda_abs * p_a, rng)
        v = rng.uniform(-cfg.d_segment / 2.0, cfg.d_segment / 2.0)
    else:
        pts, v = sample_conditioned_process(cfg, scheme, mode, rng)
        active = rng.uniform(size=pts.size) < p_a
        base = pts[active]

    x = v + cfg.r_bc
    interferers = _active_interferers(base, x, v, scheme, mode, cfg)
    fading = rng.exponential(1.0, interferers.size)
    probe_fading = float(rng.exponential(1.0))
    return Snapshot(
        probe_tx=v,
        receiver=x,
        positions=interferers,
        fading=fading,
        probe_fading=probe_fading,
    )
