"""First moment of the aggregate interference via Campbell's theorem.

The mean over the active-transmitter process is the density-weighted
integral of rho_vt*(tau*t)^-alpha over the same distance intervals that feed
the Laplace transform.  Whenever an interval reaches down to distance zero
(a receiver inside a co-channel segment under whole-road partitioning) the
integral diverges and a Divergent marker is returned instead of a number.
"""
from __future__ import annotations

from typing import Union

from ..scenario import ScenarioConfig, Scheme, TrafficModel, activity_probability, derive_scheme
from .intervals import cochannel_range, folded_pieces

__all__ = ["Divergent", "DIVERGENT", "mean_interference", "is_divergent"]


class Divergent:
    """Marker value: the mean interference integral does not converge."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Divergent"


DIVERGENT = Divergent()


def is_divergent(value: Union[float, Divergent]) -> bool:
    return isinstance(value, Divergent)


def mean_interference(
    x: float,
    v: float,
    scheme: Scheme,
    cfg: ScenarioConfig,
    tm: TrafficModel,
) -> Union[float, Divergent]:
    """Average received interference power density (mW/Hz) at position x.

    v is the probe transmitter position (per-lane exclusions only).  Returns
    0.0 for an empty interferer process and DIVERGENT when an integration
    interval touches distance zero.
    """
    sd = derive_scheme(cfg, scheme)
    p_a = activity_probability(cfg, sd, tm)
    prefactor = sd.lambda_abs * p_a * cfg.rho_vt
    if prefactor == 0.0:
        return 0.0
    pieces = []
    for c in cochannel_range(x, cfg):
        pieces.extend(folded_pieces(c, x, v, sd.min_dist, cfg))
    if any(lo == 0.0 for lo, _ in pieces):
        return DIVERGENT
    a1 = cfg.alpha - 1.0
    total = sum(lo ** -a1 - hi ** -a1 for lo, hi in pieces)
    return prefactor * cfg.tau ** -cfg.alpha * total / a1
