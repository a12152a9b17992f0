"""Energy-efficiency-optimal transmit power under a capture-probability floor.

The capture probability factorizes as c1 * exp(-c2 / rho_vt) with
c2 = gamma * sigma_n2 * (tau * r_bc)^alpha and c1 the no-noise capture
probability, which does not depend on the transmit power (the Laplace
argument always enters through the power-free product gamma*(tau*r_bc)^alpha).
Maximizing average EE subject to capture >= delta * c1 then has the
closed-form solution: the unconstrained EE peak at rho = c2 when the floor
is loose (delta <= 1/e), and the floor-active point rho = c2 / ln(1/delta)
otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from ..errors import DomainError
from ..scenario import ScenarioConfig, Scheme, TrafficModel
from .capture import capture_probability

__all__ = ["OptimizationResult", "optimal_power", "capture_constants"]


@dataclass(frozen=True)
class OptimizationResult:
    """Optimal power point and the factorization constants behind it.

    rho_opt          optimal transmit power density (mW/Hz)
    ee_opt           average energy efficiency at the optimum (bits/J)
    capture_at_opt   capture probability at the optimum
    c1               maximum attainable capture probability (no-noise limit)
    c2               power-scale constant gamma*sigma_n2*(tau*r_bc)^alpha (mW/Hz)
    delta            capture floor as a fraction of c1
    """

    rho_opt: float
    ee_opt: float
    capture_at_opt: float
    c1: float
    c2: float
    delta: float


def capture_constants(cfg: ScenarioConfig, scheme: Scheme, tm: TrafficModel) -> tuple[float, float]:
    """(c1, c2) of the capture factorization c1 * exp(-c2 / rho_vt)."""
    c2 = cfg.gamma * cfg.sigma_n2 * (cfg.tau * cfg.r_bc) ** cfg.alpha
    c1 = capture_probability(replace(cfg, sigma_n2=0.0), scheme, tm).value
    return c1, c2


def optimal_power(
    delta: float, cfg: ScenarioConfig, scheme: Scheme, tm: TrafficModel
) -> OptimizationResult:
    """Transmit power maximizing average EE with capture >= delta * c1.

    delta must lie strictly inside (0, 1).  With sigma_n2 == 0 the EE
    supremum is approached as the power vanishes; that degenerate case is
    reported as rho_opt = 0 with infinite EE.
    """
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must lie in (0, 1), got {delta!r}")
    c1, c2 = capture_constants(cfg, scheme, tm)
    spectral_eff = math.log2(1.0 + cfg.gamma)
    inv_e = math.exp(-1.0)

    if c2 == 0.0:
        capture_at_opt = c1 * (inv_e if delta <= inv_e else delta)
        return OptimizationResult(0.0, math.inf, capture_at_opt, c1, c2, delta)

    if delta <= inv_e:
        rho_opt = c2
        ee_mj = (c1 / c2) * spectral_eff * inv_e
        capture_at_opt = c1 * inv_e
    else:
        log_inv_delta = math.log(1.0 / delta)
        rho_opt = c2 / log_inv_delta
        ee_mj = (c1 / c2) * log_inv_delta * spectral_eff * delta
        capture_at_opt = c1 * delta
    return OptimizationResult(
        rho_opt=rho_opt,
        ee_opt=ee_mj * 1e3,  # mW/Hz-based constants give bits per mJ
        capture_at_opt=capture_at_opt,
        c1=c1,
        c2=c2,
        delta=delta,
    )
