"""Closed-form evaluation of the per-interval interference integral.

The building block of every Laplace-transform sum is

    integral over [a, b] of  s_rho * (tau*t)^(-alpha) / (1 + s_rho * (tau*t)^(-alpha)) dt

whose antiderivative is t * 2F1(1, 1/alpha; 1 + 1/alpha; -(tau*t)^alpha / s_rho).
Differencing the antiderivative cancels catastrophically once the integrand
has decayed, so intervals are split at the point where the hypergeometric
argument reaches X_SWITCH: below it the 2F1 difference is used, above it an
alternating reciprocal-power series of the integrand is integrated termwise.
An adaptive-quadrature fallback re-derives any value that fails plausibility
checks; PrecisionLoss is raised only when the two routes disagree beyond
tolerance on a value that was not already known to be degenerate.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import integrate
from scipy.special import hyp2f1

from ..errors import PrecisionLoss

__all__ = ["branch_integral", "branch_integral_many", "hyper_primitive", "rational_integrand"]

# Hypergeometric argument magnitude beyond which the primitive difference is
# replaced by the tail series (series error there is < X_SWITCH**-3).
X_SWITCH = 1e6
# Residual-to-primitive ratio under which the 2F1 difference has lost too
# many digits to certify and is re-derived by quadrature.
_CANCEL_TOL = 1e-7
_DISAGREE_TOL = 1e-6


def rational_integrand(t, s_rho: float, tau: float, alpha: float):
    """Integrand s_rho*(tau*t)^-alpha / (1 + s_rho*(tau*t)^-alpha); 1 at t=0."""
    t = np.asarray(t, dtype=float)
    out = np.ones_like(t)
    nz = t > 0
    p = s_rho * (tau * t[nz]) ** (-alpha)
    out[nz] = p / (1.0 + p)
    return out if out.ndim else float(out)


def hyper_primitive(t: float, s_rho: float, tau: float, alpha: float) -> float:
    """Antiderivative t * 2F1(1, 1/alpha; 1+1/alpha; -(tau*t)^alpha / s_rho)."""
    if t == 0.0:
        return 0.0
    z = -((tau * t) ** alpha) / s_rho
    return t * float(hyp2f1(1.0, 1.0 / alpha, 1.0 + 1.0 / alpha, z))


def _tail_series_many(lo: np.ndarray, hi: np.ndarray, s_rho: float, tau: float, alpha: float) -> np.ndarray:
    """Termwise-integrated expansion of the integrand in (s_rho*(tau t)^-alpha)^m,
    valid once (tau*lo)^alpha / s_rho >= X_SWITCH."""
    log_ratio = math.log(s_rho) - alpha * math.log(tau)  # log of s_rho * tau^-alpha
    log_lo = np.log(lo)
    log_hi = np.log(hi)
    total = np.zeros_like(lo)
    for m in range(1, 12):
        u_lo = np.exp(m * log_ratio + (1.0 - m * alpha) * log_lo)
        u_hi = np.exp(m * log_ratio + (1.0 - m * alpha) * log_hi)
        term = (u_lo - u_hi) / (m * alpha - 1.0)
        if m % 2 == 0:
            term = -term
        total += term
        if np.all(np.abs(term) <= 1e-18 * np.abs(total)):
            break
    return total


def _quad_value(a: float, b: float, s_rho: float, tau: float, alpha: float) -> float:
    val, _ = integrate.quad(
        rational_integrand, a, b, args=(s_rho, tau, alpha),
        epsabs=1e-300, epsrel=1e-12, limit=200,
    )
    return val


def _switch_point(s_rho: float, tau: float, alpha: float) -> float:
    """Distance at which the hypergeometric argument reaches X_SWITCH."""
    log_t = (math.log(X_SWITCH) + math.log(s_rho)) / alpha - math.log(tau)
    if log_t > 700.0:
        return math.inf
    return math.exp(log_t)


def branch_integral_many(
    lo: np.ndarray, hi: np.ndarray, s_rho: float, tau: float, alpha: float
) -> np.ndarray:
    """Vectorized branch integral over interval arrays (shared s_rho)."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    out = np.zeros_like(lo)
    if s_rho == 0.0 or lo.size == 0:
        return out
    t_star = _switch_point(s_rho, tau, alpha)

    # hypergeometric part of each interval: [lo, min(hi, t_star)]
    hi_h = np.minimum(hi, t_star)
    has_h = hi_h > lo
    if np.any(has_h):
        inv_alpha = 1.0 / alpha
        ends = np.concatenate([lo[has_h], hi_h[has_h]])
        prim = np.zeros_like(ends)
        pos = ends > 0
        z = -((tau * ends[pos]) ** alpha) / s_rho
        prim[pos] = ends[pos] * hyp2f1(1.0, inv_alpha, 1.0 + inv_alpha, z)
        n = ends.size // 2
        f_lo, f_hi = prim[:n], prim[n:]
        vals = f_hi - f_lo
        width = hi_h[has_h] - lo[has_h]
        out_of_range = (vals < 0.0) | (vals > width * (1.0 + 1e-9))
        degenerate = ~np.isfinite(vals) | (
            np.abs(vals) < _CANCEL_TOL * np.maximum(np.abs(f_lo), np.abs(f_hi))
        )
        suspect = out_of_range | degenerate
        if np.any(suspect):
            idx_all = np.flatnonzero(has_h)
            for j in np.flatnonzero(suspect):
                i = idx_all[j]
                vals[j] = _arbitrate(
                    float(vals[j]),
                    float(lo[i]),
                    float(hi_h[i]),
                    s_rho,
                    tau,
                    alpha,
                    degenerate=bool(degenerate[j]),
                )
        out[has_h] += vals

    # series part: [max(lo, t_star), hi]
    lo_s = np.maximum(lo, t_star)
    has_s = hi > lo_s
    if np.any(has_s):
        out[has_s] += _tail_series_many(lo_s[has_s], hi[has_s], s_rho, tau, alpha)
    return out


def _arbitrate(
    suspect_val: float,
    a: float,
    b: float,
    s_rho: float,
    tau: float,
    alpha: float,
    degenerate: bool,
) -> float:
    """Re-derive a suspect closed-form value by adaptive quadrature.

    A degenerate closed-form value (non-finite, or so heavily cancelled that
    no digits survive) is simply replaced.  A value that looked healthy but
    landed outside [0, b-a] is compared against quadrature and must agree
    with it; otherwise neither route can be certified.
    """
    q = _quad_value(a, b, s_rho, tau, alpha)
    if not degenerate:
        scale = max(abs(q), 1e-300)
        if abs(suspect_val - q) > _DISAGREE_TOL * scale:
            raise PrecisionLoss(
                f"hypergeometric and quadrature routes disagree on [{a}, {b}] "
                f"with s_rho={s_rho}: {suspect_val!r} vs {q!r}"
            )
    return q


def branch_integral(a: float, b: float, s_rho: float, tau: float, alpha: float) -> float:
    """Integral of the interference kernel over [a, b] (meters).

    s_rho is the dimensionless product of the Laplace argument and the
    transmit power density.  The result lies in [0, b - a].
    """
    if a < 0 or b < a:
        raise ValueError(f"need 0 <= a <= b, got a={a}, b={b}")
    if s_rho < 0:
        raise ValueError(f"need s_rho >= 0, got {s_rho}")
    if a == b or s_rho == 0.0:
        return 0.0
    return float(branch_integral_many(np.array([a]), np.array([b]), s_rho, tau, alpha)[0])
