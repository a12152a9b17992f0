"""Monte Carlo engine: point-process samplers, spatial snapshots, estimators."""

from .estimate import (
    Metric,
    MetricEstimate,
    empirical_laplace,
    empirical_mean_interference,
    estimate,
    pinned_interference_samples,
    realization_rng,
)
from .sampling import matern2_parent_density, sample_matern2, sample_ppp
from .snapshot import SimMode, Snapshot, realize_snapshot, window_half_width

__all__ = [
    "Metric",
    "MetricEstimate",
    "empirical_laplace",
    "estimate",
    "realization_rng",
    "matern2_parent_density",
    "sample_matern2",
    "sample_ppp",
    "SimMode",
    "Snapshot",
    "realize_snapshot",
    "window_half_width",
]
