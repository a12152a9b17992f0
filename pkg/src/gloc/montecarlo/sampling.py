"""Point-process samplers on a one-dimensional window."""
from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from ..errors import DensityInfeasible

__all__ = ["sample_ppp", "sample_matern2", "matern2_parent_density"]

Window = Tuple[float, float]


def sample_ppp(window: Window, density: float, rng: np.random.Generator) -> np.ndarray:
    """Homogeneous Poisson process: Poisson count, iid uniform positions."""
    lo, hi = window
    if hi <= lo:
        raise ValueError(f"window must be non-empty, got {window!r}")
    if density < 0:
        raise ValueError(f"density must be non-negative, got {density!r}")
    n = rng.poisson(density * (hi - lo))
    return rng.uniform(lo, hi, n)


def matern2_parent_density(target_density: float, d_safe: float) -> float:
    """Parent density whose mark-thinned process retains target_density.

    Inverts the one-dimensional retention law
    lambda = (1 - exp(-2*d_safe*lambda_p)) / (2*d_safe); feasible only below
    the packing limit 1/(2*d_safe).
    """
    if d_safe == 0.0:
        return target_density
    if target_density * 2.0 * d_safe >= 1.0:
        raise DensityInfeasible(
            f"target density {target_density!r} is at or above the hard-core "
            f"limit {1.0 / (2.0 * d_safe)!r} for d_safe={d_safe!r}"
        )
    return -math.log(1.0 - 2.0 * d_safe * target_density) / (2.0 * d_safe)


def sample_matern2(
    window: Window,
    target_density: float,
    d_safe: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Hard-core process by mark-based dependent thinning of a parent PPP.

    A parent survives iff no other parent within d_safe carries a smaller
    mark.  Distances wrap around the window (toroidal correction), so the
    retained density is unbiased up to the window edges.  The parent density
    is chosen so the retained process hits target_density.
    """
    if target_density == 0.0:
        return np.empty(0)
    parent_density = matern2_parent_density(target_density, d_safe)
    parents = sample_ppp(window, parent_density, rng)
    marks = rng.uniform(size=parents.size)
    if d_safe == 0.0 or parents.size < 2:
        return np.sort(parents)

    lo, hi = window
    length = hi - lo
    order = np.argsort(parents)
    pos = parents[order]
    mk = marks[order]
    # wrapped copies so each point sees neighbors across the window edges;
    # infinite-mark sentinels keep all slice indices interior for reduceat
    aug_pos = np.concatenate([[-np.inf], pos - length, pos, pos + length, [np.inf]])
    aug_mk = np.concatenate([[np.inf], mk, mk, mk, [np.inf]])
    left = np.searchsorted(aug_pos, pos - d_safe, side="right")
    right = np.searchsorted(aug_pos, pos + d_safe, side="left")
    # minimum mark in each neighborhood slice [left, right); the point itself
    # is inside its own slice, so survival is "no strictly smaller mark"
    bounds = np.empty(2 * pos.size, dtype=np.intp)
    bounds[0::2] = left
    bounds[1::2] = right
    neigh_min = np.minimum.reduceat(aug_mk, bounds)[0::2]
    keep = ~(neigh_min < mk)
    return pos[keep]
