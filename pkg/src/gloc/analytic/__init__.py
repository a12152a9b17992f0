"""Closed-form engine: interference Laplace transform, capture probability,
mean interference, link metrics, and the optimal-power solution."""

from .capture import CaptureResult, LinkMetrics, capture_probability, link_metrics
from .hyper import branch_integral, hyper_primitive, rational_integrand
from .intervals import IntervalSet, cochannel_range, interference_region
from .laplace import LaplaceQuery, laplace_interference
from .moments import DIVERGENT, Divergent, is_divergent, mean_interference
from .optimize import OptimizationResult, capture_constants, optimal_power

__all__ = [
    "CaptureResult",
    "LinkMetrics",
    "capture_probability",
    "link_metrics",
    "branch_integral",
    "hyper_primitive",
    "rational_integrand",
    "IntervalSet",
    "cochannel_range",
    "interference_region",
    "LaplaceQuery",
    "laplace_interference",
    "DIVERGENT",
    "Divergent",
    "is_divergent",
    "mean_interference",
    "OptimizationResult",
    "capture_constants",
    "optimal_power",
]
