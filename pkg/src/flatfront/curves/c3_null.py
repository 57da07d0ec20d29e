"""
c3_null.py – Null curves in C^3: the Weierstrass formula and its integral-free form.

A curve ``F = (F1, F2, F3)`` is null when ``sum (dFj)^2 = 0``. Its Weierstrass
data are ``omega = d(F1 - i F2)`` and ``g = dF3 / omega``. Conversely, from a
meromorphic ``h`` and ``g`` the curve::

    F1 = -h + g h1 + (1 - g^2)/2 h2
    F2 = i h - i g h1 + i (1 + g^2)/2 h2
    F3 = -h1 + g h2

with ``h1 = dh/dg`` and ``h2 = dh1/dg`` is null without any integration; its
Weierstrass data are ``(g, dh2)``.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np

from flatfront.constants import (
    BASEPOINT_CANDIDATES,
    DEFAULT_TOL,
    PROBE_POINTS,
    QUAD_ABS_TOL,
    QUAD_MAX_EVALS,
)
from flatfront.curves.legendrian import choose_basepoint
from flatfront.curves.matrix import is_constant, is_identically_zero, probe
from flatfront.exceptions import DegenerateCurveError, VerificationError
from flatfront.expr import nodes
from flatfront.expr.continuation import check_clearance, path_integral
from flatfront.expr.diff import differentiate
from flatfront.expr.evaluate import evaluate_many
from flatfront.expr.nodes import Const, Expr
from flatfront.expr.rational import singular_points
from flatfront.types import PathC
from flatfront.utils.sampling import route

logger = logging.getLogger(__name__)

_HALF = Const(0.5)
_I = Const(1j)


@dataclass(frozen=True)
class C3Curve:
    """Meromorphic curve ``(F1, F2, F3)`` in C^3."""

    F1: Expr
    F2: Expr
    F3: Expr

    def components(self) -> tuple[Expr, Expr, Expr]:
        return self.F1, self.F2, self.F3

    def derivative(self) -> "C3Curve":
        return C3Curve(*(differentiate(f) for f in self.components()))

    def at(self, z: complex) -> tuple[complex, complex, complex]:
        values, _ = evaluate_many(self.components(), z)
        return complex(values[0]), complex(values[1]), complex(values[2])


@dataclass(frozen=True)
class WeierstrassData:
    """
    Weierstrass data of a null curve in C^3.

    Attributes
    ----------
    g:
        Meromorphic function.
    omega:
        Coefficient of the 1-form, not identically zero.
    basepoint:
        Start of every integration path; 0 when regular, else chosen automatically.
    """

    g: Expr
    omega: Expr
    basepoint: Optional[complex] = None


# ── Weierstrass formula ───────────────────────────────────────────────────────

def weierstrass_integrands(data: WeierstrassData) -> tuple[Expr, Expr, Expr]:
    """``(1 - g^2) omega / 2``, ``i (1 + g^2) omega / 2`` and ``g omega``."""
    g, w = data.g, data.omega
    g2 = nodes.int_power(g, 2)
    one = Const(1)
    return (
        nodes.mul(_HALF, nodes.mul(nodes.sub(one, g2), w)),
        nodes.mul(Const(0.5j), nodes.mul(nodes.add(one, g2), w)),
        nodes.mul(g, w),
    )


def weierstrass_basepoint(data: WeierstrassData) -> complex:
    """Declared base point, else 0 when the integrands are regular there, else the best candidate."""
    if data.basepoint is not None:
        return complex(data.basepoint)
    integrands = weierstrass_integrands(data)
    return choose_basepoint(integrands[0], (0j, *BASEPOINT_CANDIDATES), extra=integrands[1:])


def weierstrass_integrate(
    data: WeierstrassData,
    path: Optional[PathC] = None,
    abs_tol: float = QUAD_ABS_TOL,
    max_evals: int = QUAD_MAX_EVALS,
) -> tuple[complex, complex, complex]:
    """
    Integrate the Weierstrass integrands along ``path``.

    An omitted path means the base point itself and gives ``(0, 0, 0)``.

    Raises
    ------
    QuadratureError
        If an integral misses its accuracy target.
    PathClearanceError
        If the path runs through a pole of the integrands.
    """
    if path is None:
        return 0j, 0j, 0j
    integrands = weierstrass_integrands(data)
    singular: list[complex] = []
    for f in integrands:
        singular.extend(singular_points(f))
    check_clearance(path, singular)
    out = tuple(
        path_integral(f, path, abs_tol=abs_tol, max_evals=max_evals)[0] for f in integrands
    )
    return out[0], out[1], out[2]


def weierstrass_at(data: WeierstrassData, z: complex) -> tuple[complex, complex, complex]:
    """Curve value at ``z``, integrating from the base point along a route around the poles."""
    z0 = weierstrass_basepoint(data)
    if z == z0:
        return 0j, 0j, 0j
    singular: list[complex] = []
    for f in weierstrass_integrands(data):
        singular.extend(singular_points(f))
    return weierstrass_integrate(data, route(z0, z, singular))


# ── Integral-free formula ─────────────────────────────────────────────────────

def integral_free_null(g: Expr, h: Expr) -> C3Curve:
    """
    Null curve built from ``g`` and ``h`` by differentiation alone.

    Raises
    ------
    DegenerateCurveError
        ``constant-g``.
    """
    if is_constant(g):
        raise DegenerateCurveError("constant-g", f"g = {g.source}")
    dg = differentiate(g)
    h1 = nodes.div(differentiate(h), dg)
    h2 = nodes.div(differentiate(h1), dg)
    g2 = nodes.int_power(g, 2)
    one = Const(1)
    F1 = nodes.add(
        nodes.sub(nodes.mul(g, h1), h),
        nodes.mul(nodes.mul(_HALF, nodes.sub(one, g2)), h2),
    )
    F2 = nodes.mul(
        _I,
        nodes.add(
            nodes.sub(h, nodes.mul(g, h1)),
            nodes.mul(nodes.mul(_HALF, nodes.add(one, g2)), h2),
        ),
    )
    F3 = nodes.sub(nodes.mul(g, h2), h1)
    logger.debug("Integral-free null curve for g=%s, h=%s", g.source, h.source)
    return C3Curve(F1, F2, F3)


# ── Extraction ────────────────────────────────────────────────────────────────

def _max_relative(residuals: Sequence[Expr], scale: Sequence[Expr]) -> float:
    rows = probe([*residuals, *scale])
    n = len(residuals)
    worst = 0.0
    for row in rows:
        size = 1.0 + max((abs(v) for v in row[n:]), default=0.0)
        worst = max(worst, max(abs(v) for v in row[:n]) / size)
    return worst


def extract_weierstrass(F: C3Curve, tol: float = DEFAULT_TOL) -> WeierstrassData:
    """
    Read off ``omega = d(F1 - i F2)`` and ``g = dF3 / omega``.

    The Weierstrass formula is checked componentwise at the probe points.

    Raises
    ------
    DegenerateCurveError
        ``degenerate-omega`` when ``F1 - i F2`` is constant.
    VerificationError
        If ``F`` is not null, so the formula fails.
    """
    omega = differentiate(nodes.sub(F.F1, nodes.mul(_I, F.F2)))
    if is_identically_zero(omega, scale=list(F.derivative().components())):
        raise DegenerateCurveError("degenerate-omega", "F1 - i F2 is constant")
    dF = F.derivative().components()
    g = nodes.div(dF[2], omega)
    data = WeierstrassData(g=g, omega=omega)
    residuals = [nodes.sub(d, w) for d, w in zip(dF, weierstrass_integrands(data))]
    worst = _max_relative(residuals, dF)
    if worst > tol:
        raise VerificationError("weierstrass-formula", worst)
    return data


def extract_h_data(F: C3Curve, tol: float = DEFAULT_TOL) -> tuple[Expr, Expr, Expr]:
    """
    Recover ``(h, h1, h2)`` with ``F = integral_free_null(g, h)``.

    ``h2 = F1 - i F2``, ``h1 = h2 g - F3`` and ``2h = -F1 - i F2 - h2 g^2 + 2 h1 g``;
    the chain ``dh1 = h2 dg``, ``dh = h1 dg`` is then checked at the probe points.

    Raises
    ------
    VerificationError
        If ``F`` is not null or the chain fails.
    """
    g = extract_weierstrass(F, tol).g
    h2 = nodes.sub(F.F1, nodes.mul(_I, F.F2))
    h1 = nodes.sub(nodes.mul(h2, g), F.F3)
    psi = nodes.neg(nodes.add(F.F1, nodes.mul(_I, F.F2)))
    twice_h = nodes.add(
        nodes.sub(psi, nodes.mul(h2, nodes.int_power(g, 2))),
        nodes.mul(Const(2), nodes.mul(h1, g)),
    )
    h = nodes.mul(_HALF, twice_h)
    dg = differentiate(g)
    chain = [
        nodes.sub(differentiate(h1), nodes.mul(h2, dg)),
        nodes.sub(differentiate(h), nodes.mul(h1, dg)),
    ]
    worst = _max_relative(chain, [h, h1, h2, dg])
    if worst > tol:
        raise VerificationError("h-chain", worst)
    return h, h1, h2


# ── Legendrian curves in C^3 ──────────────────────────────────────────────────

def c3_legendrian(f: Expr, g: Expr) -> C3Curve:
    """
    Legendrian curve ``(f, g, df/dg)`` for the contact form ``dx1 - x3 dx2``.

    Raises
    ------
    DegenerateCurveError
        ``constant-g``.
    """
    if is_constant(g):
        raise DegenerateCurveError("constant-g", f"g = {g.source}")
    return C3Curve(f, g, nodes.div(differentiate(f), differentiate(g)))


# ── Residuals ─────────────────────────────────────────────────────────────────

def nullity_residual(F: C3Curve, points: Sequence[complex] = PROBE_POINTS) -> float:
    """Largest ``|sum (dFj)^2| / (1 + sum |dFj|^2)`` over ``points``."""
    values, _ = evaluate_many(F.derivative().components(), np.asarray(points, dtype=complex))
    d1, d2, d3 = values
    scale = 1.0 + np.abs(d1) ** 2 + np.abs(d2) ** 2 + np.abs(d3) ** 2
    return float(np.max(np.abs(d1**2 + d2**2 + d3**2) / scale))


def contact_residual(F: C3Curve, points: Sequence[complex] = PROBE_POINTS) -> float:
    """Largest ``|dx1 - x3 dx2|`` relative to the size of ``dx1`` over ``points``."""
    exprs = [differentiate(F.F1), F.F3, differentiate(F.F2)]
    values, _ = evaluate_many(exprs, np.asarray(points, dtype=complex))
    d1, x3, d2 = values
    return float(np.max(np.abs(d1 - x3 * d2) / (1.0 + np.abs(d1))))
