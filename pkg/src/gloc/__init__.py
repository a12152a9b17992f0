"""Performance model of geo-location based channel access for V2V broadcast.

Closed-form capture probability, interference moments, rate/energy metrics
and optimal transmit power for the whole-road (SLP) and per-lane (MLP)
resource partitions, cross-validated by a built-in Monte Carlo simulator.
"""

__version__ = "0.1.0"

from .analytic import (
    DIVERGENT,
    CaptureResult,
    Divergent,
    IntervalSet,
    LaplaceQuery,
    LinkMetrics,
    OptimizationResult,
    branch_integral,
    capture_constants,
    capture_probability,
    interference_region,
    is_divergent,
    laplace_interference,
    link_metrics,
    mean_interference,
    optimal_power,
)
from .errors import (
    ConfigError,
    ConstraintViolation,
    DensityInfeasible,
    DomainError,
    GlocError,
    PrecisionLoss,
    QuadratureNotConverged,
    RejectionOverflow,
)
from .montecarlo import (
    Metric,
    MetricEstimate,
    SimMode,
    Snapshot,
    estimate,
    realize_snapshot,
    sample_matern2,
    sample_ppp,
)
from .scenario import (
    ConfigBundle,
    NonPeriodic,
    Periodic,
    ScenarioConfig,
    Scheme,
    SchemeDerived,
    SegmentAddress,
    TrafficModel,
    activity_probability,
    derive_scheme,
    load_config,
    noise_limited,
    segment_of,
)
