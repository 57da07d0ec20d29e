"""
null_curve.py – Null curves in PSL(2,C) built from their two Gauss maps.

A null curve ``F = [[A, B], [C, D]]`` has a degenerate derivative everywhere.
Its hyperbolic Gauss map is ``G = dA/dC`` and its secondary Gauss map is
``g = -dB/dA``. ``small_null`` inverts this: given non-constant ``(G, g)``
with ``g`` not a Moebius image of ``G`` it returns the unique null curve with
those Gauss maps, with no integration involved.

Quotients of differentials ``d(.)/dG`` are formed in the single coordinate
chart as ``differentiate(.) / differentiate(G)``.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np

from flatfront.exceptions import DegenerateCurveError, IndeterminateQuotientError
from flatfront.expr import nodes
from flatfront.expr.diff import differentiate
from flatfront.expr.evaluate import evaluate_many
from flatfront.expr.nodes import Expr
from flatfront.curves.matrix import ExprMatrix, is_constant, is_identically_zero
from flatfront.psl2 import INFINITY
from flatfront.types import BranchState, MatrixKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NullData:
    """
    Gauss-map pair of a null curve.

    Attributes
    ----------
    G:
        Hyperbolic Gauss map.
    g:
        Secondary Gauss map.
    """

    G: Expr
    g: Expr


def small_null(data: NullData) -> ExprMatrix:
    """
    Null curve with hyperbolic Gauss map ``G`` and secondary Gauss map ``g``.

    With ``a = sqrt(dG/dg)`` and ``b = -g a`` the entries are::

        A = G da/dG - a    B = G db/dG - b
        C = da/dG          D = db/dG

    Raises
    ------
    DegenerateCurveError
        ``constant-G`` / ``constant-g`` for constant input, ``g-is-moebius-of-G``
        when the resulting curve is constant.
    """
    if is_constant(data.G):
        raise DegenerateCurveError("constant-G", f"G = {data.G.source}")
    if is_constant(data.g):
        raise DegenerateCurveError("constant-g", f"g = {data.g.source}")
    dG = differentiate(data.G)
    dg = differentiate(data.g)
    a = nodes.sqrt(nodes.div(dG, dg))
    b = nodes.neg(nodes.mul(data.g, a))
    C = nodes.div(differentiate(a), dG)
    D = nodes.div(differentiate(b), dG)
    A = nodes.sub(nodes.mul(data.G, C), a)
    B = nodes.sub(nodes.mul(data.G, D), b)
    F = ExprMatrix(A, B, C, D, kind=MatrixKind.NULL)

    # F is constant exactly when g is a Moebius transform of G.
    dF = F.derivative().entries()
    if all(is_identically_zero(x, scale=F.entries()) for x in dF):
        raise DegenerateCurveError(
            "g-is-moebius-of-G", f"G = {data.G.source}, g = {data.g.source}"
        )
    logger.debug("Built null curve for G=%s, g=%s", data.G.source, data.g.source)
    return F


# ── Gauss maps ────────────────────────────────────────────────────────────────

def _pick_quotient(
    first: tuple[Expr, Expr], second: tuple[Expr, Expr], what: str
) -> tuple[Expr, Expr]:
    """First numerator/denominator pair unless both of its members vanish identically."""
    for num, den in (first, second):
        if not (is_identically_zero(num) and is_identically_zero(den)):
            return num, den
    raise DegenerateCurveError("all-branches-degenerate", what)


def _quotient_value(num: complex, den: complex, z: complex, name: str) -> complex:
    if den == 0:
        if num == 0:
            raise IndeterminateQuotientError(z, name)
        return INFINITY
    return num / den


def gauss_from_null(
    F: ExprMatrix, z: complex, branch: Optional[BranchState] = None
) -> tuple[complex, complex]:
    """
    Hyperbolic and secondary Gauss maps ``(dA/dC, -dB/dA)`` of ``F`` at ``z``.

    When a numerator/denominator pair vanishes identically the alternative
    quotients ``dB/dD`` and ``-dD/dC`` are used.

    Raises
    ------
    DegenerateCurveError
        ``all-branches-degenerate`` if both pairs vanish identically.
    """
    dA, dB, dC, dD = F.derivative().entries()
    G_num, G_den = _pick_quotient((dA, dC), (dB, dD), "hyperbolic Gauss map")
    g_num, g_den = _pick_quotient((nodes.neg(dB), dA), (nodes.neg(dD), dC), "secondary Gauss map")
    (gn, gd, sn, sd), _ = evaluate_many([G_num, G_den, g_num, g_den], z, branch)
    return (
        _quotient_value(complex(gn), complex(gd), z, "dA/dC"),
        _quotient_value(complex(sn), complex(sd), z, "-dB/dA"),
    )


def maurer_cartan(F: ExprMatrix) -> tuple[Expr, Expr, Expr, Expr]:
    """
    Entries of ``F^{-1} dF`` for unimodular ``F``, row-major.

    Returns
    -------
    (alpha11, alpha12, alpha21, alpha22)
    """
    A, B, C, D = F.entries()
    dA, dB, dC, dD = F.derivative().entries()
    a11 = nodes.sub(nodes.mul(D, dA), nodes.mul(B, dC))
    a12 = nodes.sub(nodes.mul(D, dB), nodes.mul(B, dD))
    a21 = nodes.sub(nodes.mul(A, dC), nodes.mul(C, dA))
    a22 = nodes.sub(nodes.mul(A, dD), nodes.mul(C, dB))
    return a11, a12, a21, a22


def secondary_gauss_via_mc(
    F: ExprMatrix, z: complex, branch: Optional[BranchState] = None
) -> complex:
    """
    Secondary Gauss map ``alpha11/alpha21`` read off ``alpha = F^{-1} dF``.

    Falls back to ``alpha12/alpha22`` when the first column of ``alpha``
    vanishes identically.

    Raises
    ------
    DegenerateCurveError
        ``degenerate-alpha`` when ``dA`` and ``dB`` vanish identically or no
        column of ``alpha`` is usable.
    """
    dA, dB, _, _ = F.derivative().entries()
    if is_identically_zero(dA) and is_identically_zero(dB):
        raise DegenerateCurveError("degenerate-alpha", "dA and dB vanish identically")
    a11, a12, a21, a22 = maurer_cartan(F)
    try:
        num, den = _pick_quotient((a11, a21), (a12, a22), "Maurer-Cartan form")
    except DegenerateCurveError as exc:
        raise DegenerateCurveError("degenerate-alpha", exc.detail) from exc
    (n, d), _ = evaluate_many([num, den], z, branch)
    return _quotient_value(complex(n), complex(d), z, "alpha11/alpha21")


# ── Hopf differential and Schwarzian ──────────────────────────────────────────

def hopf_null(F: ExprMatrix, g: Expr) -> Expr:
    """Coefficient ``q`` of the Hopf differential ``Q = (A dC - C dA) dg = q dz^2``."""
    A, _, C, _ = F.entries()
    dA, _, dC, _ = F.derivative().entries()
    return nodes.mul(nodes.sub(nodes.mul(A, dC), nodes.mul(C, dA)), differentiate(g))


def schwarzian(f: Expr) -> Expr:
    """
    Schwarzian derivative ``(f''/f')' - (f''/f')^2 / 2``.

    Raises
    ------
    DegenerateCurveError
        ``constant-input`` for constant ``f``.
    """
    if is_constant(f):
        raise DegenerateCurveError("constant-input", f"f = {f.source}")
    df = differentiate(f)
    return schwarzian_from_log_derivative(nodes.div(differentiate(df), df))


def schwarzian_from_log_derivative(r: Expr) -> Expr:
    """``r' - r^2/2`` for ``r = f''/f'``."""
    half_square = nodes.div(nodes.int_power(r, 2), nodes.Const(2))
    return nodes.sub(differentiate(r), half_square)


# ── Residuals ─────────────────────────────────────────────────────────────────

def null_residuals(F: ExprMatrix, points: Sequence[complex]) -> dict[str, float]:
    """
    Largest residuals of the null-curve identities over ``points``.

    Returns
    -------
    dict with ``det`` (|det F - 1|) and ``det_dF`` (|det dF| / ||dF||^2).
    """
    z = np.asarray(points, dtype=complex)
    exprs = [*F.entries(), *F.derivative().entries()]
    values, _ = evaluate_many(exprs, z)
    a, b, c, d, da, db, dc, dd = values
    det = np.abs(a * d - b * c - 1.0)
    scale = np.abs(da) ** 2 + np.abs(db) ** 2 + np.abs(dc) ** 2 + np.abs(dd) ** 2
    det_d = np.abs(da * dd - db * dc) / np.where(scale > 0, scale, 1.0)
    return {"det": float(np.max(det)), "det_dF": float(np.max(det_d))}
