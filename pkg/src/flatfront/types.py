"""
types.py – Shared enumerations and dataclasses used across flatfront.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Union

import numpy as np

from flatfront.psl2 import Mat2C

Scalar = Union[complex, np.ndarray]


# ── Enumerations ──────────────────────────────────────────────────────────────

class MatrixKind(str, Enum):
    NULL = "null"
    LEGENDRIAN = "legendrian"
    PLAIN = "plain"


class Construction(str, Enum):
    FROM_GAUSS_PAIR = "from_gauss_pair"
    FROM_G_OMEGA = "from_G_omega"
    EXPLICIT = "explicit"


class Verdict(str, Enum):
    DESCENDS = "descends_to_M2"
    UNIVERSAL_COVER_ONLY = "universal_cover_only"


class MonodromyClass(str, Enum):
    TRIVIAL = "trivial_in_PSL"
    UNITARY_NONTRIVIAL = "unitary_nontrivial"
    NONUNITARY = "nonunitary"


class Spacing(str, Enum):
    LINEAR = "linear"
    GEOMETRIC = "geometric"


class EndSide(str, Enum):
    """Which side of an annular patch is an end of the surface."""

    NONE = "none"
    INNER = "inner"
    OUTER = "outer"


# ── Paths and branches ────────────────────────────────────────────────────────

@dataclass(frozen=True)
class PathC:
    """
    Piecewise-linear path in the complex plane.

    A closed path returns from its last vertex to its first along an implicit
    final segment.

    Attributes
    ----------
    vertices:
        Ordered vertices; at least 2 (3 if closed), consecutive ones distinct.
    closed:
        Whether the path is a loop.
    """

    vertices: tuple[complex, ...]
    closed: bool = False

    def __post_init__(self) -> None:
        verts = tuple(complex(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        minimum = 3 if self.closed else 2
        if len(verts) < minimum:
            raise ValueError(f"A {'closed' if self.closed else 'open'} path needs "
                             f"at least {minimum} vertices.")
        pts = self.points()
        for p, q in zip(pts[:-1], pts[1:]):
            if p == q:
                raise ValueError(f"Consecutive path vertices coincide at {p}.")

    @classmethod
    def segment(cls, a: complex, b: complex) -> "PathC":
        return cls((a, b))

    @classmethod
    def polyline(cls, points: Sequence[complex], closed: bool = False) -> "PathC":
        return cls(tuple(points), closed)

    @classmethod
    def circle(
        cls, center: complex, radius: float, start_angle: float = 0.0, n: int = 64
    ) -> "PathC":
        """Counterclockwise inscribed n-gon of a circle, starting at ``start_angle``."""
        pts = tuple(center + radius * cmath.exp(1j * (start_angle + 2 * math.pi * k / n))
                    for k in range(n))
        return cls(pts, closed=True)

    @classmethod
    def keyhole(
        cls, center: complex, radius: float, approach: Sequence[complex], n: int = 64
    ) -> "PathC":
        """
        Loop going once counterclockwise around ``center``.

        Walks out along ``approach``, which must end on the circle of ``radius``
        about ``center``, circles, and walks back along ``approach`` reversed.
        """
        entry = complex(approach[-1])
        if abs(abs(entry - center) - radius) > 1e-9 * (1 + radius):
            raise ValueError("The approach must end on the keyhole circle.")
        start = cmath.phase(entry - center)
        arc = [center + radius * cmath.exp(1j * (start + 2 * math.pi * k / n))
               for k in range(1, n)]
        return cls((*approach, *arc, entry, *reversed(approach[1:-1])), closed=True)

    def points(self) -> list[complex]:
        """Traversal order, repeating the first vertex at the end for closed paths."""
        pts = list(self.vertices)
        if self.closed:
            pts.append(pts[0])
        return pts

    @property
    def start(self) -> complex:
        return self.vertices[0]

    @property
    def end(self) -> complex:
        return self.vertices[0] if self.closed else self.vertices[-1]

    def then(self, other: "PathC") -> "PathC":
        """Concatenate two paths; ``other`` must start where ``self`` ends."""
        if abs(self.end - other.start) > 1e-12:
            raise ValueError("Paths do not connect.")
        first = self.points()
        second = other.points()[1:]
        closed = abs(second[-1] - first[0]) < 1e-12 if second else False
        pts = first + second
        if closed:
            pts = pts[:-1]
        return PathC(tuple(pts), closed=closed)

    def bbox_diameter(self) -> float:
        pts = np.array(self.vertices)
        width = pts.real.max() - pts.real.min()
        height = pts.imag.max() - pts.imag.min()
        return float(math.hypot(width, height))


@dataclass(frozen=True)
class BranchState:
    """
    Branch bookkeeping for multivalued subterms.

    ``anchors`` maps each log-type key (prefix ``log:``) to the current value of
    the logarithm of that argument, and each path-integral key (prefix ``int:``)
    to the current value of the integral, all valid at ``point``. An empty state
    selects principal branches. Values may be arrays for vectorized continuation.
    """

    point: Optional[Scalar] = None
    anchors: Mapping[str, Scalar] = field(default_factory=dict)

    def take(self, index: Any) -> "BranchState":
        """Select one element of a vectorized state."""
        if self.point is None:
            return self

        def pick(v: Scalar) -> Scalar:
            return v[index] if isinstance(v, np.ndarray) and v.ndim else v

        return BranchState(pick(self.point), {k: pick(v) for k, v in self.anchors.items()})


# ── Requests ──────────────────────────────────────────────────────────────────

@dataclass
class RunRequest:
    """
    Per-invocation overrides for the numerical configuration.

    Attributes
    ----------
    samples, tol, seed, workers:
        Override the corresponding ``FrontConfig`` field when not None.
    """

    samples: Optional[int] = None
    tol: Optional[float] = None
    seed: Optional[int] = None
    workers: Optional[int] = None


# ── Conditions and monodromy ──────────────────────────────────────────────────

@dataclass(frozen=True)
class PoleCheck:
    point: complex
    order: int
    passed: bool


@dataclass(frozen=True)
class PeriodCheck:
    """
    Period of the xi-form over one loop.

    Attributes
    ----------
    loop:
        The loop integrated over.
    period:
        The computed period.
    nearest:
        Nearest member of pi*i*Z.
    passed:
        Whether |period - nearest| is within tolerance.
    """

    loop: PathC
    period: complex
    nearest: complex
    passed: bool


@dataclass(frozen=True)
class ConditionsReport:
    """
    Outcome of testing the descent conditions of a Gauss pair.

    Attributes
    ----------
    pole_checks:
        Order of every pole of the xi-form (infinity included); passes iff order 1.
    period_checks:
        One entry per loop.
    pole_analysis_available:
        False when the data are not rational and pole orders could not be computed.
    verdict:
        ``DESCENDS`` iff pole analysis ran and every pole and period check passed.
    """

    pole_checks: tuple[PoleCheck, ...]
    period_checks: tuple[PeriodCheck, ...]
    pole_analysis_available: bool
    verdict: Verdict


@dataclass(frozen=True)
class MonodromyResult:
    loop: PathC
    matrix: Mat2C
    classification: MonodromyClass


# ── Mesh grids and output ─────────────────────────────────────────────────────

@dataclass(frozen=True)
class AnnularGrid:
    """
    Polar grid ``center + r e^{i t}``.

    Attributes
    ----------
    center:
        Grid center.
    rmin, rmax:
        Radial range; ``rmin == 0`` makes a disk with a single center vertex.
    nr, ntheta:
        Number of rings and of vertices per ring.
    spacing:
        Linear or geometric radii.
    end:
        Side that is an end of the surface; rings are walked from the other side
        and walking stops once a whole ring is past the truncation norm.
    theta_offset:
        Angle of the first vertex of every ring.
    """

    center: complex
    rmin: float
    rmax: float
    nr: int
    ntheta: int
    spacing: Spacing = Spacing.LINEAR
    end: EndSide = EndSide.NONE
    theta_offset: float = 0.0

    def __post_init__(self) -> None:
        if not 0 <= self.rmin < self.rmax:
            raise ValueError("Annular grid requires 0 <= rmin < rmax.")
        if self.nr < 2 or self.ntheta < 3:
            raise ValueError("Annular grid requires nr >= 2 and ntheta >= 3.")
        if self.spacing is Spacing.GEOMETRIC and self.rmin == 0:
            raise ValueError("Geometric spacing requires rmin > 0.")

    def radii(self) -> np.ndarray:
        """Ring radii ordered from the non-end side toward the end."""
        if self.spacing is Spacing.GEOMETRIC:
            r = np.geomspace(self.rmin, self.rmax, self.nr)
        else:
            r = np.linspace(self.rmin, self.rmax, self.nr)
        return r[::-1] if self.end is EndSide.INNER else r

    def angles(self) -> np.ndarray:
        return self.theta_offset + 2 * math.pi * np.arange(self.ntheta) / self.ntheta


@dataclass(frozen=True)
class RectGrid:
    x0: float
    x1: float
    y0: float
    y1: float
    nx: int
    ny: int

    def __post_init__(self) -> None:
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError("Rectangular grid requires x0 < x1 and y0 < y1.")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("Rectangular grid requires nx, ny >= 2.")


Grid = Union[AnnularGrid, RectGrid]


@dataclass
class FrontMesh:
    """
    Triangulated flat front in the Poincare ball.

    Attributes
    ----------
    vertices:
        (N, 3) ball coordinates, every row of norm < 1.
    faces:
        (M, 3) vertex indices.
    sing:
        (N,) singularity indicator log(|omega|/|theta|), clipped to +-SING_CLIP.
    dsigma2:
        (N,) value of |omega|^2 - |theta|^2.
    params:
        z-values of the vertices.
    """

    vertices: np.ndarray
    faces: np.ndarray
    sing: np.ndarray
    dsigma2: np.ndarray
    params: np.ndarray

    @property
    def n_vertices(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def n_faces(self) -> int:
        return int(self.faces.shape[0])

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.vertices, axis=1)

    @classmethod
    def concatenate(cls, meshes: Sequence["FrontMesh"]) -> "FrontMesh":
        offsets = np.cumsum([0] + [m.n_vertices for m in meshes[:-1]])
        return cls(
            vertices=np.vstack([m.vertices for m in meshes]),
            faces=np.vstack([m.faces + off for m, off in zip(meshes, offsets)]).astype(np.int64),
            sing=np.concatenate([m.sing for m in meshes]),
            dsigma2=np.concatenate([m.dsigma2 for m in meshes]),
            params=np.concatenate([m.params for m in meshes]),
        )
