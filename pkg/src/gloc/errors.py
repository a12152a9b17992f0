"""Exception types shared across the package."""


class GlocError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(GlocError):
    """Malformed or invalid configuration input."""


class ConstraintViolation(GlocError):
    """A physical/system constraint does not hold for the given parameters.

    Raised e.g. when a periodic message cannot be transmitted within its
    reporting interval at the configured MCS and AR bandwidth.
    """


class DomainError(GlocError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PrecisionLoss(GlocError):
    """Both evaluation routes of a closed-form integral disagree beyond
    tolerance, so no trustworthy value can be returned."""


class QuadratureNotConverged(GlocError):
    """Fixed-order quadrature and its refinement disagree beyond tolerance."""


class DensityInfeasible(GlocError):
    """Requested hard-core point density is at or above the packing limit."""


class RejectionOverflow(GlocError):
    """Probe placement kept violating the hard-core condition; the geometry
    does not admit a conditioned snapshot."""
