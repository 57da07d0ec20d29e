"""
sampling.py – Seeded sample points and singularity-avoiding routes.

Identity checks draw their points here so that a given seed always produces the
same report. ``route`` builds a polyline from a base point to a target that
keeps a margin from a list of singular points; continuing a curve along it
puts every quantity on the branch reached from the base point.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Sequence

import numpy as np

from flatfront.expr.continuation import segment_distance
from flatfront.types import PathC

logger = logging.getLogger(__name__)

ROUTE_MARGIN: float = 0.05
SAMPLE_MIN_DISTANCE: float = 0.15


def sample_points(
    rng: np.random.Generator,
    n: int,
    center: complex = 0j,
    rmin: float = 0.3,
    rmax: float = 2.5,
    avoid: Sequence[complex] = (),
    min_distance: float = SAMPLE_MIN_DISTANCE,
) -> np.ndarray:
    """
    ``n`` points uniform by area in the annulus ``rmin <= |z - center| <= rmax``.

    Points closer than ``min_distance`` to any of ``avoid`` are redrawn.

    Raises
    ------
    ValueError
        If the region is so crowded that rejection sampling stalls.
    """
    if not 0 <= rmin < rmax:
        raise ValueError("Sampling annulus requires 0 <= rmin < rmax.")
    avoid_arr = np.asarray(list(avoid), dtype=complex)
    out: list[complex] = []
    attempts = 0
    while len(out) < n:
        attempts += 1
        if attempts > 1000 * max(n, 1):
            raise ValueError("Could not draw sample points away from the singular set.")
        r = math.sqrt(rng.uniform(rmin**2, rmax**2))
        theta = rng.uniform(0.0, 2 * math.pi)
        z = center + r * cmath.exp(1j * theta)
        if avoid_arr.size and np.min(np.abs(avoid_arr - z)) < min_distance:
            continue
        out.append(z)
    return np.asarray(out, dtype=complex)


def route(
    start: complex,
    end: complex,
    avoid: Sequence[complex] = (),
    margin: float = ROUTE_MARGIN,
    max_depth: int = 8,
) -> PathC:
    """
    Polyline from ``start`` to ``end`` passing at least ``margin`` from ``avoid``.

    Each offending segment is split at a waypoint placed ``2 * margin`` from the
    nearest singular point, on the side the segment already passes.
    """
    if start == end:
        raise ValueError("A route needs distinct end points.")
    vertices = _detour(complex(start), complex(end), list(avoid), margin, max_depth)
    cleaned = [vertices[0]]
    for v in vertices[1:]:
        if v != cleaned[-1]:
            cleaned.append(v)
    return PathC.polyline(cleaned)


def _detour(
    a: complex, b: complex, avoid: list[complex], margin: float, depth: int
) -> list[complex]:
    worst, worst_d = None, margin
    for p in avoid:
        d = segment_distance(p, a, b)
        if d < worst_d and abs(p - b) > 0 and abs(p - a) > 0:
            worst, worst_d = p, d
    if worst is None or depth == 0:
        return [a, b]
    delta = b - a
    t = min(max(((worst - a) * delta.conjugate()).real / abs(delta) ** 2, 0.0), 1.0)
    offset = a + t * delta - worst
    direction = offset / abs(offset) if abs(offset) > 1e-12 else 1j * delta / abs(delta)
    waypoint = worst + 2 * margin * direction
    left = _detour(a, waypoint, avoid, margin, depth - 1)
    right = _detour(waypoint, b, avoid, margin, depth - 1)
    return left[:-1] + right
