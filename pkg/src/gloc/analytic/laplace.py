"""Laplace transform of the aggregate co-channel interference.

For the thinned point process of active transmitters, the transform at the
receiver factorizes into exp(-lambda_abs * p_a * K) where K sums the kernel
integral over every distance interval contributed by the co-channel
segments.  The per-lane scheme keeps hard-core gaps around the probe
transmitter and the receiver; the whole-road scheme integrates through the
probe segment itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..scenario import ScenarioConfig, Scheme, derive_scheme
from .hyper import branch_integral_many
from .intervals import cochannel_range, folded_pieces

__all__ = [
    "LaplaceQuery",
    "laplace_interference",
    "interference_kernel_sum",
    "interference_kernel_sums_batch",
    "gather_intervals",
]


@dataclass(frozen=True)
class LaplaceQuery:
    """Evaluation point of the interference Laplace transform.

    s        transform argument, in 1/(mW/Hz) so that s * rho_vt is
             dimensionless against (tau*t)^alpha
    x        receiver position (m)
    v        probe transmitter position (m); ignored for the SLP scheme
    scheme   resource-partition scheme
    p_a      activity probability of the interferer process
    """

    s: float
    x: float
    v: float
    scheme: Scheme
    p_a: float

    def __post_init__(self) -> None:
        if self.s < 0:
            raise ValueError(f"Laplace argument must be non-negative, got {self.s!r}")
        if not 0.0 <= self.p_a <= 1.0:
            raise ValueError(f"p_a must lie in [0, 1], got {self.p_a!r}")


def gather_intervals(x: float, v: float, scheme: Scheme, cfg: ScenarioConfig):
    """(lo, hi) arrays of every folded interval over the co-channel sum."""
    min_dist = derive_scheme(cfg, scheme).min_dist
    los: list[float] = []
    his: list[float] = []
    for c in cochannel_range(x, cfg):
        for lo, hi in folded_pieces(c, x, v, min_dist, cfg):
            los.append(lo)
            his.append(hi)
    return np.asarray(los), np.asarray(his)


def interference_kernel_sum(
    s: float, x: float, v: float, scheme: Scheme, cfg: ScenarioConfig
) -> float:
    """Sum of kernel integrals over all co-channel intervals (the exponent of
    the Laplace transform before scaling by the active density)."""
    if s == 0.0:
        return 0.0
    lo, hi = gather_intervals(x, v, scheme, cfg)
    vals = branch_integral_many(lo, hi, s * cfg.rho_vt, cfg.tau, cfg.alpha)
    return float(np.sum(vals))


def _batch_folded_intervals(xs: np.ndarray, vs: np.ndarray, min_dist: float, cfg: ScenarioConfig):
    """Folded intervals for many (x, v) pairs at once.

    Vectorized mirror of folded_pieces: per (point, segment) the raw clipped
    interval loses up to two exclusion gaps and folds into at most two
    distance intervals, giving eight masked candidates.  Returns flat
    (lo, hi, point_index) arrays of the valid ones.
    """
    nd = cfg.n_ar * cfg.d_segment
    c_lo = math.ceil((np.min(xs) - cfg.d_max - cfg.d_segment / 2.0) / nd)
    c_hi = math.floor((np.max(xs) + cfg.d_max + cfg.d_segment / 2.0) / nd)
    centers = np.arange(c_lo, c_hi + 1) * nd
    lo = np.maximum(centers[None, :] - cfg.d_segment / 2.0 - xs[:, None], -cfg.d_max)
    hi = np.minimum(centers[None, :] + cfg.d_segment / 2.0 - xs[:, None], cfg.d_max)

    pieces = [(lo, hi)]
    if min_dist > 0.0:
        gaps = [
            (np.full_like(xs, -min_dist)[:, None], np.full_like(xs, min_dist)[:, None]),
            ((vs - xs - min_dist)[:, None], (vs - xs + min_dist)[:, None]),
        ]
        for g_lo, g_hi in gaps:
            nxt = []
            for a, b in pieces:
                nxt.append((a, np.minimum(b, g_lo)))
                nxt.append((np.maximum(a, g_hi), b))
            pieces = nxt

    los, his, idx = [], [], []
    n_pts = xs.size
    point_idx = np.broadcast_to(np.arange(n_pts)[:, None], lo.shape)
    for a, b in pieces:
        pos_lo, pos_hi = np.maximum(a, 0.0), b
        neg_lo, neg_hi = np.maximum(-b, 0.0), -a
        for flo, fhi in ((pos_lo, pos_hi), (neg_lo, neg_hi)):
            mask = flo < fhi
            los.append(flo[mask])
            his.append(fhi[mask])
            idx.append(point_idx[mask])
    return np.concatenate(los), np.concatenate(his), np.concatenate(idx)


def interference_kernel_sums_batch(
    s: float, xs: np.ndarray, vs: np.ndarray, scheme: Scheme, cfg: ScenarioConfig
) -> np.ndarray:
    """Kernel sums for many (x, v) pairs sharing one Laplace argument."""
    xs = np.asarray(xs, dtype=float)
    vs = np.asarray(vs, dtype=float)
    if s == 0.0:
        return np.zeros_like(xs)
    min_dist = derive_scheme(cfg, scheme).min_dist
    lo, hi, idx = _batch_folded_intervals(xs, vs, min_dist, cfg)
    vals = branch_integral_many(lo, hi, s * cfg.rho_vt, cfg.tau, cfg.alpha)
    sums = np.zeros(xs.size)
    np.add.at(sums, idx, vals)
    return sums


def laplace_interference(q: LaplaceQuery, cfg: ScenarioConfig) -> float:
    """E[exp(-s I(x))] for the active-transmitter process; lies in (0, 1]."""
    sd = derive_scheme(cfg, q.scheme)
    density = sd.lambda_abs * q.p_a
    if density == 0.0 or q.s == 0.0:
        return 1.0
    kernel = interference_kernel_sum(q.s, q.x, q.v, q.scheme, cfg)
    return math.exp(-density * kernel)
