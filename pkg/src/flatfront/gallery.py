"""
gallery.py – Parameterized families of flat fronts with known closed forms.

Each constructor validates its parameters, builds the data ``(G, omega)`` and
the Gauss pair ``(G, G*)``, and records what is known about the curve: a
closed-form matrix where one exists, the dual canonical form, the monodromy
around each generator loop and whether ``f = E E*`` descends to the domain.
Every expected datum carries a plain-language statement used in reports.

All branches are principal at the base point ``z0 = 2``.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Union

from flatfront.constants import GALLERY_NAMES
from flatfront.curves.legendrian import (
    GaussPair,
    LegendrianCurve,
    legendrian_from_G_omega,
    legendrian_from_gauss,
)
from flatfront.curves.matrix import ExprMatrix
from flatfront.exceptions import GalleryParameterError
from flatfront.expr.diff import differentiate
from flatfront.expr.evaluate import evaluate_many
from flatfront.expr.nodes import Const, Expr
from flatfront.expr.parser import parse_expr
from flatfront.expr.rational import singular_points
from flatfront.psl2 import Mat2C
from flatfront.types import AnnularGrid, EndSide, Grid, MatrixKind, PathC, Spacing
from flatfront.utils.sampling import route

logger = logging.getLogger(__name__)

BASEPOINT: complex = 2.0 + 0j
KEYHOLE_RADIUS: float = 0.3

Number = Union[int, float]


@dataclass(frozen=True)
class DeckLoop:
    """
    Generator loop based at the gallery base point.

    Attributes
    ----------
    label:
        Human-readable name, e.g. ``"around 1"``.
    loop:
        Closed path starting at the base point.
    expected:
        Monodromy ``M`` with ``E`` continued around ``loop`` equal to ``E M`` (up to sign).
    """

    label: str
    loop: PathC
    expected: Mat2C


@dataclass(frozen=True)
class SampleRegion:
    """Annulus for random sample points, minus small discs around ``avoid``."""

    center: complex
    rmin: float
    rmax: float
    avoid: tuple[complex, ...] = ()


@dataclass(frozen=True)
class GalleryEntry:
    """
    One member of a gallery family.

    Attributes
    ----------
    name:
        Family name.
    params:
        Validated parameters.
    G, omega:
        Hyperbolic Gauss map and canonical form.
    Gstar:
        Second hyperbolic Gauss map.
    theta:
        Dual canonical form, when known in closed form.
    closed_form:
        Closed-form matrix ``P``; the curve equals ``left P right`` up to sign.
    closed_form_left, closed_form_right:
        Normalizing factors around ``closed_form``.
    finite_punctures:
        Finite points removed from the domain.
    loops:
        Generator loops with their expected monodromy.
    descends:
        Whether ``f = E E*`` is well defined on the punctured domain.
    symmetry:
        ``(factor, a)`` with ``f(factor z) = a f(z) a*``, when the family has one.
    parallel_family:
        Whether rescaling ``k`` moves along the parallel family.
    statements:
        Plain-language statement behind every expected datum, keyed by check name.
    """

    name: str
    params: Mapping[str, float]
    G: Expr
    omega: Expr
    Gstar: Expr
    theta: Optional[Expr] = None
    closed_form: Optional[ExprMatrix] = None
    closed_form_left: Mat2C = field(default_factory=Mat2C.identity)
    closed_form_right: Mat2C = field(default_factory=Mat2C.identity)
    finite_punctures: tuple[complex, ...] = ()
    loops: tuple[DeckLoop, ...] = ()
    descends: bool = True
    symmetry: Optional[tuple[complex, Mat2C]] = None
    parallel_family: bool = False
    region: SampleRegion = SampleRegion(0j, 0.3, 2.5)
    plan: Callable[[int, int], list[Grid]] = field(default=lambda nr, nt: [], repr=False)
    statements: Mapping[str, str] = field(default_factory=dict)
    basepoint: complex = BASEPOINT

    @cached_property
    def c(self) -> complex:
        """Value of xi at the base point making both constructions agree."""
        (dG, w), _ = evaluate_many([differentiate(self.G), self.omega], self.basepoint)
        return complex(cmath.sqrt(-dG / w))

    @cached_property
    def _curve(self) -> LegendrianCurve:
        return legendrian_from_G_omega(self.G, self.omega, z0=self.basepoint)

    def curve(self) -> LegendrianCurve:
        """Curve built from ``(G, omega)``."""
        return self._curve

    def gauss_pair(self) -> GaussPair:
        return GaussPair(G=self.G, Gstar=self.Gstar, z0=self.basepoint, c=self.c)

    def curve_from_gauss(self) -> LegendrianCurve:
        """Curve built from ``(G, G*)``; agrees with ``curve()`` up to sign."""
        return legendrian_from_gauss(self.gauss_pair())

    def deck_loops(self) -> list[DeckLoop]:
        return list(self.loops)

    def mesh_plan(self, nr: int = 32, ntheta: int = 64) -> list[Grid]:
        """Grid patches covering the interesting part of the surface."""
        return self.plan(nr, ntheta)

    def sample_region(self) -> SampleRegion:
        return self.region

    def expected_matrix(self, z: complex, path: Optional[PathC] = None) -> Optional[Mat2C]:
        """``left P right`` at ``z`` (continued along ``path`` from the base point), if known."""
        if self.closed_form is None:
            return None
        if path is None:
            p = self.closed_form.evaluate(z)
        else:
            p, _ = self.closed_form.continue_along(path)
        return self.closed_form_left @ p @ self.closed_form_right

    def route_to(self, z: complex) -> Optional[PathC]:
        if z == self.basepoint:
            return None
        # G* may have a pole off the punctures (at 0 for some families).
        avoid = (*self.finite_punctures, *singular_points(self.Gstar))
        return route(self.basepoint, z, avoid)


# ── Helpers ───────────────────────────────────────────────────────────────────

def _require_positive(name: str, params: Mapping[str, float], key: str = "k") -> float:
    value = float(params[key])
    if not (math.isfinite(value) and value > 0):
        raise GalleryParameterError(name, "nonpositive-k", f"{key} must be positive, got {value}")
    return value


def _check_names(name: str, params: Mapping[str, Number], allowed: tuple[str, ...]) -> None:
    unknown = sorted(set(params) - set(allowed))
    if unknown:
        raise GalleryParameterError(
            name, "unknown-parameter", f"unknown parameter(s) {', '.join(unknown)}"
        )


def _circle_loop(radius: float) -> PathC:
    return PathC.circle(0j, radius, start_angle=cmath.phase(BASEPOINT), n=64)


def _keyhole(center: complex, others: tuple[complex, ...], radius: float = KEYHOLE_RADIUS,
             n: int = 48) -> PathC:
    """Loop from the base point once counterclockwise around ``center``, missing ``others``."""
    entry = center + radius * cmath.exp(1j * cmath.phase(BASEPOINT - center))
    approach = route(BASEPOINT, entry, others, margin=radius).vertices
    return PathC.keyhole(center, radius, approach, n=n)


def _end_annulus(center: complex, rmax: float, rmin: float, nr: int, ntheta: int,
                 end: EndSide = EndSide.INNER) -> AnnularGrid:
    return AnnularGrid(
        center=center, rmin=rmin, rmax=rmax, nr=nr, ntheta=ntheta,
        spacing=Spacing.GEOMETRIC, end=end,
        theta_offset=cmath.phase(BASEPOINT - center),
    )


def _roots_of_unity(n: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * math.pi * j / n) for j in range(n))


# ── Families ──────────────────────────────────────────────────────────────────

def equidistant(k: float = 2.0) -> GalleryEntry:
    """
    Surfaces equidistant from a geodesic: ``G = z``, ``omega = k/(2z) dz``.

    The curve is ``(i/sqrt 2) [[sqrt(kz), sqrt(z/k)], [sqrt(k/z), -1/sqrt(kz)]]``.
    """
    params = {"k": k}
    k = _require_positive("equidistant", params)
    closed = ExprMatrix(
        A=parse_expr("sqrt(k*z)", params),
        B=parse_expr("sqrt(z/k)", params),
        C=parse_expr("sqrt(k/z)", params),
        D=parse_expr("-1/sqrt(k*z)", params),
        shared_factor=Const(1j / math.sqrt(2)),
        kind=MatrixKind.LEGENDRIAN,
    )

    def plan(nr: int, ntheta: int) -> list[Grid]:
        return [AnnularGrid(0j, 0.2, 5.0, nr, ntheta, Spacing.GEOMETRIC,
                            theta_offset=cmath.phase(BASEPOINT))]

    return GalleryEntry(
        name="equidistant",
        params=params,
        G=parse_expr("z"),
        omega=parse_expr("k/(2*z)", params),
        Gstar=parse_expr("-z"),
        theta=parse_expr("1/(2*k*z)", params),
        closed_form=closed,
        finite_punctures=(0j,),
        loops=(DeckLoop("around 0", _circle_loop(2.0), Mat2C.identity()),),
        region=SampleRegion(0j, 0.3, 2.5),
        plan=plan,
        statements={
            "closed_form": "E = (i/sqrt2)[[sqrt(kz), sqrt(z/k)], [sqrt(k/z), -1/sqrt(kz)]]",
            "gauss_pair": "hyperbolic Gauss maps (G, G*) = (z, -z)",
            "omega": "canonical form omega = k/(2z) dz",
            "theta": "dual canonical form theta = 1/(2kz) dz",
            "monodromy": "E changes sign around 0, so it is single valued in PSL(2,C)",
            "descent": "f = EE* is a surface equidistant from a geodesic",
        },
    )


def revolution(mu: float = 0.5) -> GalleryEntry:
    """
    Flat fronts of revolution: ``G = s z``, ``omega = w z^(mu-1) dz`` with
    ``s = sqrt((mu-1)/(mu+1))`` and ``w = sqrt(1-mu^2)/2``.

    The curve equals ``diag(sqrt s, 1/sqrt s) P diag(sqrt(2w), 1/sqrt(2w))`` where
    ``P = (i/sqrt 2) [[z^((mu+1)/2), (mu+1) z^(-(mu-1)/2)], [z^((mu-1)/2), (mu-1) z^(-(mu+1)/2)]]``.
    """
    mu = float(mu)
    if not (math.isfinite(mu) and mu > 0 and mu != 1):
        raise GalleryParameterError("revolution", "invalid-mu",
                                    f"mu must be positive and different from 1, got {mu}")
    params = {"mu": mu}
    s = cmath.sqrt((mu - 1) / (mu + 1))
    w = cmath.sqrt(1 - mu**2) / 2
    closed = ExprMatrix(
        A=parse_expr("z^((mu+1)/2)", params),
        B=parse_expr("(mu+1)*z^(-(mu-1)/2)", params),
        C=parse_expr("z^((mu-1)/2)", params),
        D=parse_expr("(mu-1)*z^(-(mu+1)/2)", params),
        shared_factor=Const(1j / math.sqrt(2)),
        kind=MatrixKind.LEGENDRIAN,
    )
    root_s = cmath.sqrt(s)
    root_2w = cmath.sqrt(2 * w)
    phase = cmath.exp(1j * math.pi * mu)
    coeffs = {"s": s, "w": w, "mu": mu, "t": s * (mu + 1) / (mu - 1)}

    def plan(nr: int, ntheta: int) -> list[Grid]:
        return [AnnularGrid(0j, 0.2, 5.0, nr, ntheta, Spacing.GEOMETRIC,
                            theta_offset=cmath.phase(BASEPOINT))]

    return GalleryEntry(
        name="revolution",
        params=params,
        G=parse_expr("s*z", coeffs),
        omega=parse_expr("w*z^(mu-1)", coeffs),
        Gstar=parse_expr("t*z", coeffs),
        theta=parse_expr("w*z^(-mu-1)", coeffs),
        closed_form=closed,
        closed_form_left=Mat2C.diag(root_s, 1 / root_s),
        closed_form_right=Mat2C.diag(root_2w, 1 / root_2w),
        finite_punctures=(0j,),
        loops=(DeckLoop("around 0", _circle_loop(2.0), Mat2C.diag(-phase, -1 / phase)),),
        region=SampleRegion(0j, 0.3, 2.5),
        plan=plan,
        statements={
            "closed_form": "E is the matrix (i/sqrt2)[[z^((mu+1)/2), (mu+1)z^(-(mu-1)/2)], "
                           "[z^((mu-1)/2), (mu-1)z^(-(mu+1)/2)]] up to an isometry and a "
                           "parallel rescaling",
            "gauss_pair": "hyperbolic Gauss maps (sz, s(mu+1)/(mu-1) z), s = sqrt((mu-1)/(mu+1))",
            "omega": "canonical form omega = (sqrt(1-mu^2)/2) z^(mu-1) dz",
            "theta": "dual canonical form theta = (sqrt(1-mu^2)/2) z^(-mu-1) dz",
            "monodromy": "E o tau = E diag(-e^(pi i mu), -e^(-pi i mu)) around 0",
            "descent": "f = EE* is well defined on C minus 0",
            "singular_set": "the metric degenerates on |z| = 1",
        },
    )


def dihedral(n: Number = 3, k: float = 1.0) -> GalleryEntry:
    """
    Flat fronts with dihedral symmetry: ``G = z``, ``omega = k (z^n - 1)^(-2/n) dz``
    on the sphere minus the n-th roots of unity.
    """
    params_in = {"n": n, "k": k}
    nf = float(n)
    if not (math.isfinite(nf) and nf.is_integer() and nf >= 2):
        raise GalleryParameterError("dihedral", "invalid-n", f"n must be an integer >= 2, got {n}")
    n_int = int(nf)
    k = _require_positive("dihedral", params_in)
    params = {"n": float(n_int), "k": k}
    roots = _roots_of_unity(n_int)
    zeta = roots[1]
    loops = tuple(
        DeckLoop(f"around zeta^{j}", _keyhole(p, tuple(q for q in roots if q != p)),
                 Mat2C.diag(1 / zeta, zeta))
        for j, p in enumerate(roots)
    )
    half = cmath.exp(1j * math.pi / n_int)

    def plan(nr: int, ntheta: int) -> list[Grid]:
        spacing = min(abs(roots[0] - roots[1]) / 2.5, 0.4)
        grids: list[Grid] = [_end_annulus(p, spacing, 1e-5, nr, ntheta) for p in roots]
        grids.append(AnnularGrid(0j, 0.0, 0.5, max(nr // 2, 2), ntheta,
                                 theta_offset=cmath.phase(BASEPOINT)))
        grids.append(AnnularGrid(0j, 1.5, 4.0, max(nr // 2, 2), ntheta, Spacing.GEOMETRIC,
                                 theta_offset=cmath.phase(BASEPOINT)))
        return grids

    return GalleryEntry(
        name="dihedral",
        params=params,
        G=parse_expr("z"),
        omega=parse_expr("k*(z^n - 1)^(-2/n)", params),
        Gstar=parse_expr("z^(1-n)", params),
        finite_punctures=roots,
        loops=loops,
        symmetry=(zeta, Mat2C.diag(half, 1 / half)),
        parallel_family=True,
        region=SampleRegion(0j, 0.3, 2.5, avoid=roots),
        plan=plan,
        statements={
            "gauss_pair": "hyperbolic Gauss maps (G, G*) = (z, z^(1-n))",
            "monodromy": "E o tau_j = E diag(zeta^-1, zeta) around each root zeta^j",
            "descent": "f = EE* is well defined on the sphere minus the roots of unity",
            "symmetry": "z -> zeta z preserves the fundamental forms (dihedral symmetry)",
            "parallel": "k parametrizes a parallel family",
            "ends": "each end zeta^j is complete",
        },
    )


def tetrahedral(k: float = 1.0) -> GalleryEntry:
    """
    Flat front with tetrahedral symmetry: ``G = z``, ``omega = k (z^3 - 1)^(-1/2) dz``
    with four complete ends at the cube roots of unity and infinity.
    """
    params = {"k": k}
    k = _require_positive("tetrahedral", params)
    roots = _roots_of_unity(3)
    loops = tuple(
        DeckLoop(f"around zeta^{j}", _keyhole(p, tuple(q for q in roots if q != p)),
                 Mat2C.diag(-1j, 1j))
        for j, p in enumerate(roots)
    )

    def plan(nr: int, ntheta: int) -> list[Grid]:
        grids: list[Grid] = [_end_annulus(p, 0.5, 1e-6, nr, ntheta) for p in roots]
        grids.append(AnnularGrid(0j, 0.0, 0.45, max(nr // 2, 2), ntheta,
                                 theta_offset=cmath.phase(BASEPOINT)))
        grids.append(_end_annulus(0j, 1e6, 1.6, nr, ntheta, end=EndSide.OUTER))
        return grids

    return GalleryEntry(
        name="tetrahedral",
        params=params,
        G=parse_expr("z"),
        omega=parse_expr("k*(z^3 - 1)^(-1/2)", params),
        Gstar=parse_expr("(4 - z^3)/(3*z^2)"),
        finite_punctures=roots,
        loops=loops,
        parallel_family=True,
        region=SampleRegion(0j, 0.3, 2.5, avoid=roots),
        plan=plan,
        statements={
            "gauss_pair": "hyperbolic Gauss maps (G, G*) = (z, (4 - z^3)/(3z^2))",
            "monodromy": "E o tau_j = E diag(-i, i) around each cube root of unity",
            "descent": "f = EE* is well defined on the sphere minus the cube roots of unity",
            "parallel": "k parametrizes a parallel family",
            "ends": "four complete ends",
        },
    )


# ── Dispatch ──────────────────────────────────────────────────────────────────

_BUILDERS: dict[str, tuple[Callable[..., GalleryEntry], tuple[str, ...]]] = {
    "equidistant": (equidistant, ("k",)),
    "revolution": (revolution, ("mu",)),
    "dihedral": (dihedral, ("n", "k")),
    "tetrahedral": (tetrahedral, ("k",)),
}


def gallery_names() -> tuple[str, ...]:
    return GALLERY_NAMES


def build_entry(name: str, params: Optional[Mapping[str, Number]] = None) -> GalleryEntry:
    """
    Construct gallery entry ``name`` with keyword ``params``.

    Raises
    ------
    GalleryParameterError
        ``unknown-entry`` for an unknown name, or the family's own parameter codes.
    """
    if name not in _BUILDERS:
        raise GalleryParameterError(name, "unknown-entry",
                                    f"expected one of {', '.join(GALLERY_NAMES)}")
    builder, allowed = _BUILDERS[name]
    params = dict(params or {})
    _check_names(name, params, allowed)
    entry = builder(**params)
    logger.debug("Built gallery entry %s with %s", name, dict(entry.params))
    return entry
