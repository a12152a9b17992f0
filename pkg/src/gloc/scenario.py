"""Scenario parameters, resource-partition schemes and road-to-resource mapping.

Positions live on the real line (single-axis road abstraction); the probe
segment is centered at the origin.  Power-like quantities are stored in
linear units (mW/Hz); dB/dBm conversion happens only at the config/CLI
boundary.
"""
from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Union

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError, ConstraintViolation

__all__ = [
    "Scheme",
    "ScenarioConfig",
    "NonPeriodic",
    "Periodic",
    "TrafficModel",
    "SchemeDerived",
    "ProcessKind",
    "SegmentAddress",
    "derive_scheme",
    "activity_probability",
    "segment_of",
    "noise_limited",
    "ConfigBundle",
    "load_config",
    "config_from_dict",
    "apply_overrides",
    "db_to_linear",
    "linear_to_db",
]


class Scheme(enum.Enum):
    SLP = "slp"
    MLP = "mlp"


class ProcessKind(enum.Enum):
    PPP = "ppp"
    CONDITIONALLY_THINNED_PPP = "conditionally_thinned_ppp"


def db_to_linear(v_db: float) -> float:
    return 10.0 ** (v_db / 10.0)


def linear_to_db(v: float) -> float:
    return 10.0 * math.log10(v) if v > 0 else -math.inf


@dataclass(frozen=True)
class ScenarioConfig:
    """Physical and system parameters of a single evaluation scenario.

    Defaults are the baseline evaluation setup: a two-lane highway at 80% of
    the maximum hard-core density, 9 MHz useful bandwidth, 10 access
    resources, and a 150 m broadcast link.

    tau, alpha      path-loss slope/exponent, applied to distances in meters
    lambda_lane     vehicles per meter per lane
    d_safe          minimum same-lane spacing (m)
    n_lanes         lane count
    d_segment       road-segment length (m)
    n_ar            access resources (total for SLP; per lane for MLP)
    bw              useful system bandwidth (Hz)
    rho_vt          transmit power density (mW/Hz)
    sigma_n2        noise power density (mW/Hz); 0 disables noise
    gamma           SINR threshold (linear)
    d_max           maximum communication range (m)
    r_bc            broadcast (probe) link distance (m)
    """

    tau: float = 490.0
    alpha: float = 1.68
    lambda_lane: float = 0.8 / 84.0
    d_safe: float = 42.0
    n_lanes: int = 2
    d_segment: float = 42.0
    n_ar: int = 10
    bw: float = 9e6
    rho_vt: float = db_to_linear(-40.0)
    sigma_n2: float = db_to_linear(-165.0)
    gamma: float = db_to_linear(5.0)
    d_max: float = 56e3
    r_bc: float = 150.0

    def __post_init__(self) -> None:
        positive = {
            "tau": self.tau,
            "alpha": self.alpha,
            "lambda_lane": self.lambda_lane,
            "d_segment": self.d_segment,
            "bw": self.bw,
            "rho_vt": self.rho_vt,
            "gamma": self.gamma,
            "d_max": self.d_max,
            "r_bc": self.r_bc,
        }
        for name, value in positive.items():
            if not value > 0:
                raise ConfigError(f"{name} must be strictly positive, got {value!r}")
        if not self.alpha > 1:
            raise ConfigError(f"alpha must exceed 1 for the path-loss integrals to converge, got {self.alpha!r}")
        if self.d_safe < 0:
            raise ConfigError(f"d_safe must be non-negative, got {self.d_safe!r}")
        # sigma_n2 == 0 is the no-noise limit and is explicitly allowed.
        if self.sigma_n2 < 0:
            raise ConfigError(f"sigma_n2 must be non-negative, got {self.sigma_n2!r}")
        if not (isinstance(self.n_lanes, int) and self.n_lanes >= 1):
            raise ConfigError(f"n_lanes must be a positive integer, got {self.n_lanes!r}")
        if not (isinstance(self.n_ar, int) and self.n_ar >= 1):
            raise ConfigError(f"n_ar must be a positive integer, got {self.n_ar!r}")
        if self.d_safe > 0 and self.lambda_lane > 1.0 / (2.0 * self.d_safe) + 1e-15:
            raise ConfigError(
                f"lambda_lane={self.lambda_lane!r} exceeds the hard-core packing "
                f"limit 1/(2*d_safe)={1.0 / (2.0 * self.d_safe)!r}"
            )

    def with_(self, **changes) -> "ScenarioConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class NonPeriodic:
    """Event-driven traffic: the activity probability is an exogenous constant."""

    p_a: float = 0.25

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_a <= 1.0:
            raise ConfigError(f"p_a must lie in [0, 1], got {self.p_a!r}")


@dataclass(frozen=True)
class Periodic:
    """Status-report traffic: activity follows from message size and cadence."""

    m_bc: float = 2400.0
    t_rep: float = 0.1

    def __post_init__(self) -> None:
        if self.m_bc < 0:
            raise ConfigError(f"m_bc must be non-negative, got {self.m_bc!r}")
        if not self.t_rep > 0:
            raise ConfigError(f"t_rep must be strictly positive, got {self.t_rep!r}")


TrafficModel = Union[NonPeriodic, Periodic]


@dataclass(frozen=True)
class SchemeDerived:
    """Scheme-dependent quantities of the single-axis abstraction model."""

    scheme: Scheme
    lambda_abs: float
    b_ar: float
    min_dist: float
    process_kind: ProcessKind


def derive_scheme(cfg: ScenarioConfig, scheme: Scheme) -> SchemeDerived:
    """Map a scenario onto the abstraction model of the chosen partition scheme.

    Whole-road partitioning (SLP) aggregates all lanes into one axis: lane
    densities add, each AR gets bw/n_ar, and vehicles may come arbitrarily
    close to a receiver on another lane.  Per-lane partitioning (MLP) keeps
    one lane per axis with orthogonal bandwidth across lanes, so each AR gets
    bw/(n_ar*n_lanes) and the hard-core spacing survives in the model.
    """
    if scheme is Scheme.SLP:
        return SchemeDerived(
            scheme=scheme,
            lambda_abs=cfg.lambda_lane * cfg.n_lanes,
            b_ar=cfg.bw / cfg.n_ar,
            min_dist=0.0,
            process_kind=ProcessKind.PPP,
        )
    return SchemeDerived(
        scheme=scheme,
        lambda_abs=cfg.lambda_lane,
        b_ar=cfg.bw / (cfg.n_ar * cfg.n_lanes),
        min_dist=cfg.d_safe,
        process_kind=ProcessKind.CONDITIONALLY_THINNED_PPP,
    )


def activity_probability(cfg: ScenarioConfig, sd: SchemeDerived, tm: TrafficModel) -> float:
    """Probability that a vehicle has data in flight at a random instant.

    For periodic traffic this is airtime over reporting period,
    m_bc / (b_ar * log2(1+gamma)) / t_rep, and the airtime must fit within
    one reporting period.
    """
    if isinstance(tm, NonPeriodic):
        return tm.p_a
    spectral_eff = math.log2(1.0 + cfg.gamma)
    airtime = tm.m_bc / (sd.b_ar * spectral_eff)
    if airtime >= tm.t_rep:
        raise ConstraintViolation(
            f"periodic message airtime {airtime:.6g} s does not fit within "
            f"t_rep={tm.t_rep:.6g} s (b_ar={sd.b_ar:.6g} Hz, gamma={cfg.gamma:.6g})"
        )
    return airtime / tm.t_rep


@dataclass(frozen=True)
class SegmentAddress:
    """Cluster index and AR index of the segment containing a position."""

    cluster: int
    ar_index: int


def segment_of(x: float, cfg: ScenarioConfig) -> SegmentAddress:
    """Locate the segment of position x.

    Segments are half-open, d_segment long, and the probe segment (cluster 0,
    AR 0) is centered at the origin; consecutive clusters hold n_ar segments.
    """
    shifted = (x + cfg.d_segment / 2.0) / cfg.d_segment
    seg = math.floor(shifted)
    return SegmentAddress(
        cluster=math.floor(shifted / cfg.n_ar),
        ar_index=seg % cfg.n_ar,
    )


def noise_limited(cfg: ScenarioConfig) -> bool:
    """True when no co-channel vehicle can fall within range of any receiver
    under per-lane partitioning, so only noise limits the link.

    Requires the hard-core distance to cover a whole segment (no same-segment
    transmitter) and the co-channel spacing to exceed twice the communication
    range in the worst-case placement.  The spacing condition is evaluated on
    integer resource counts, n_ar > ceil((2*d_max + d_segment)/d_segment),
    with a relative guard so a ratio sitting on an integer is not pushed up
    by float rounding.
    """
    if cfg.d_safe < cfg.d_segment:
        return False
    ratio = (2.0 * cfg.d_max + cfg.d_segment) / cfg.d_segment
    threshold = math.ceil(ratio - 1e-9)
    return cfg.n_ar > threshold


# --- configuration files ------------------------------------------------

_DB_SUFFIXES = ("_db", "_dbm_hz")
_SCENARIO_FIELDS = {
    "tau", "alpha", "lambda_lane", "d_safe", "n_lanes", "d_segment", "n_ar",
    "bw", "rho_vt", "sigma_n2", "gamma", "d_max", "r_bc",
}
_TRAFFIC_FIELDS = {"p_a", "m_bc", "t_rep"}
_INT_FIELDS = {"n_lanes", "n_ar"}


@dataclass(frozen=True)
class ConfigBundle:
    """A scenario plus the traffic parameters needed to build either traffic model."""

    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    p_a: float = 0.25
    m_bc: float = 2400.0
    t_rep: float = 0.1

    def traffic(self, kind: str) -> TrafficModel:
        if kind in ("non_periodic", "non-periodic"):
            return NonPeriodic(p_a=self.p_a)
        if kind == "periodic":
            return Periodic(m_bc=self.m_bc, t_rep=self.t_rep)
        raise ConfigError(f"unknown traffic kind {kind!r}")

    def as_dict(self) -> dict:
        d = {k: getattr(self.scenario, k) for k in sorted(_SCENARIO_FIELDS)}
        d.update(p_a=self.p_a, m_bc=self.m_bc, t_rep=self.t_rep)
        return d


def apply_overrides(bundle: ConfigBundle, overrides: dict) -> ConfigBundle:
    """Rebuild a bundle with key overrides (dB-suffixed keys accepted)."""
    if not overrides:
        return bundle
    flat = bundle.as_dict()
    for key, val in overrides.items():
        base = key
        for suffix in _DB_SUFFIXES:
            if key.endswith(suffix):
                base = key[: -len(suffix)]
                break
        flat.pop(base, None)
        flat[key] = val
    return config_from_dict(flat)


def config_from_dict(raw: dict) -> ConfigBundle:
    """Build a ConfigBundle from flat key/value pairs.

    Keys match the field names; *_db / *_dbm_hz variants are accepted for
    gamma, rho_vt and sigma_n2 and converted to linear scale on load.
    """
    values: dict = {}
    for key, val in raw.items():
        base = key
        for suffix in _DB_SUFFIXES:
            if key.endswith(suffix):
                base = key[: -len(suffix)]
                val = db_to_linear(_as_float(key, val))
                break
        if base not in _SCENARIO_FIELDS | _TRAFFIC_FIELDS:
            raise ConfigError(f"unknown config key {key!r}")
        if base in values:
            raise ConfigError(f"config key {base!r} given more than once (linear and dB forms?)")
        if base in _INT_FIELDS:
            ival = int(val)
            if ival != val:
                raise ConfigError(f"{key} must be an integer, got {val!r}")
            values[base] = ival
        else:
            values[base] = _as_float(key, val)

    traffic = {k: values.pop(k) for k in list(values) if k in _TRAFFIC_FIELDS}
    scenario = ScenarioConfig(**values)
    return ConfigBundle(scenario=scenario, **traffic)


def load_config(path: str | Path) -> ConfigBundle:
    """Read a key = value (TOML) scenario file."""
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from exc
    flat: dict = {}
    for key, val in raw.items():
        if isinstance(val, dict):
            raise ConfigError(f"config must be flat key = value pairs; found table {key!r}")
        flat[key] = val
    return config_from_dict(flat)


def _as_float(key: str, val) -> float:
    if isinstance(val, bool) or not isinstance(val, (int, float, str)):
        raise ConfigError(f"config value for {key!r} must be numeric, got {val!r}")
    try:
        return float(val)
    except ValueError as exc:
        raise ConfigError(f"config value for {key!r} must be numeric, got {val!r}") from exc
