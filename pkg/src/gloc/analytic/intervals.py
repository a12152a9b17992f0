"""Integration regions for the interference functionals.

A region starts as a signed interval of transmitter offsets t = y - x around
the receiver, gets the co-channel clipping and (per-lane scheme) the two
hard-core exclusion gaps applied, and is finally folded onto distances
t >= 0, since the integrands depend on |t| only.  Folded intervals may
overlap each other — they originate from disjoint pieces of the signed axis
and are integrated independently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Tuple

from ..scenario import ScenarioConfig, Scheme, derive_scheme

__all__ = ["IntervalSet", "interference_region", "cochannel_range"]

Interval = Tuple[float, float]


@dataclass(frozen=True)
class IntervalSet:
    """Ordered (lo, hi) distance intervals with 0 <= lo < hi <= d_max."""

    intervals: Tuple[Interval, ...]

    def __post_init__(self) -> None:
        for lo, hi in self.intervals:
            if not (0.0 <= lo < hi):
                raise ValueError(f"malformed interval ({lo}, {hi})")

    @property
    def empty(self) -> bool:
        return not self.intervals

    def total_length(self) -> float:
        return sum(hi - lo for lo, hi in self.intervals)

    def touches_zero(self) -> bool:
        return any(lo == 0.0 for lo, _ in self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)


def _subtract_open(pieces: Iterable[Interval], gap: Interval) -> list[Interval]:
    """Remove an open interval from each signed piece."""
    glo, ghi = gap
    out: list[Interval] = []
    for lo, hi in pieces:
        if ghi <= lo or glo >= hi:
            out.append((lo, hi))
            continue
        if lo < glo:
            out.append((lo, glo))
        if ghi < hi:
            out.append((ghi, hi))
    return out


def folded_pieces(
    c: int, x: float, v: float, min_dist: float, cfg: ScenarioConfig
) -> list[Interval]:
    """Folded distance intervals of co-channel segment c as plain tuples.

    Shared kernel of interference_region and the Laplace sums; the hot loops
    use it directly to avoid per-segment object construction.
    """
    nd = cfg.n_ar * cfg.d_segment
    lo = c * nd - cfg.d_segment / 2.0 - x
    hi = c * nd + cfg.d_segment / 2.0 - x
    if lo < -cfg.d_max:
        lo = -cfg.d_max
    if hi > cfg.d_max:
        hi = cfg.d_max
    if lo >= hi:
        return []
    pieces: list[Interval] = [(lo, hi)]
    if min_dist > 0.0:
        pieces = _subtract_open(pieces, (-min_dist, min_dist))
        pieces = _subtract_open(pieces, (v - x - min_dist, v - x + min_dist))
    folded: list[Interval] = []
    for plo, phi in pieces:
        if phi <= 0.0:
            folded.append((-phi, -plo))
        elif plo >= 0.0:
            folded.append((plo, phi))
        else:
            if phi > 0.0:
                folded.append((0.0, phi))
            if plo < 0.0:
                folded.append((0.0, -plo))
    return [(lo, hi) for lo, hi in folded if hi > lo]


def interference_region(
    c: int,
    x: float,
    v: float,
    scheme: Scheme,
    cfg: ScenarioConfig,
) -> IntervalSet:
    """Distance intervals over which co-channel segment c interferes at x.

    v is the probe transmitter position; it only matters for the per-lane
    scheme, whose interferers must keep the hard-core distance from both the
    probe transmitter and the receiver.
    """
    min_dist = derive_scheme(cfg, scheme).min_dist
    return IntervalSet(tuple(sorted(folded_pieces(c, x, v, min_dist, cfg))))


def cochannel_range(x: float, cfg: ScenarioConfig) -> range:
    """Indices c of co-channel segments that can intersect the ball of radius
    d_max around x.  Segments outside this range produce empty regions."""
    nd = cfg.n_ar * cfg.d_segment
    c_lo = math.ceil((x - cfg.d_max - cfg.d_segment / 2.0) / nd)
    c_hi = math.floor((x + cfg.d_max + cfg.d_segment / 2.0) / nd)
    return range(c_lo, c_hi + 1)
