"""
legendrian.py – Holomorphic Legendrian curves in PSL(2,C).

A Legendrian curve ``E = [[A, B], [C, D]]`` annihilates the contact form
``D dA - B dC``. Writing ``E^{-1} dE = [[0, theta], [omega, 0]]`` defines the
canonical form ``omega`` and its dual ``theta``; ``G = A/C`` and ``G* = B/D``
are the two hyperbolic Gauss maps.

Two constructions are provided:

* ``legendrian_from_gauss`` from the Gauss pair ``(G, G*)``. It needs the
  factor ``xi = c exp(integral of dG/(G - G*))``. When that 1-form is rational
  with simple poles, ``xi`` is written down exactly as a product of complex
  powers; otherwise it becomes a path-integral node evaluated by quadrature.
* ``legendrian_from_G_omega`` from ``G`` and the canonical form ``omega``,
  which needs no integration at all.

Curves given by complex powers live on a covering of their domain; ``monodromy``
reports what happens to ``E`` after analytic continuation around a loop.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np
from numpy.polynomial import Polynomial

from flatfront.constants import (
    BASEPOINT_CANDIDATES,
    CLEARANCE_FACTOR,
    MAX_ARG_STEP,
    PERIOD_TOL,
    QUAD_ABS_TOL,
    QUAD_MAX_EVALS,
)
from flatfront.curves.matrix import ExprMatrix, is_constant, is_identically_zero
from flatfront.curves.null_curve import schwarzian_from_log_derivative
from flatfront.exceptions import (
    BranchPointError,
    DegenerateCurveError,
    IndeterminateQuotientError,
    NotRationalError,
    PoleError,
)
from flatfront.expr import nodes
from flatfront.expr.continuation import (
    BranchTracker,
    check_clearance,
    loop_period,
    path_integral,
)
from flatfront.expr.diff import differentiate
from flatfront.expr.evaluate import evaluate_many
from flatfront.expr.nodes import Const, ExpIntegral, Expr, Z
from flatfront.expr.rational import form_poles, partial_fractions, singular_points
from flatfront.psl2 import INFINITY, Mat2C, is_unitary, psl_distance
from flatfront.types import (
    BranchState,
    ConditionsReport,
    Construction,
    MatrixKind,
    MonodromyClass,
    MonodromyResult,
    PathC,
    PeriodCheck,
    PoleCheck,
    Verdict,
)
from flatfront.utils.sampling import route

logger = logging.getLogger(__name__)

_I = Const(1j)
_RESIDUE_SNAP = 1e-12


# ── Types ─────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class GaussPair:
    """
    Data ``(G, G*)`` of a Legendrian curve.

    Attributes
    ----------
    G, Gstar:
        Non-constant hyperbolic Gauss maps with ``G`` not identically ``G*``.
    z0:
        Base point of the xi-integral; chosen automatically when None.
    c:
        Nonzero value of xi at ``z0``.
    """

    G: Expr
    Gstar: Expr
    z0: Optional[complex] = None
    c: complex = 1.0


@dataclass(frozen=True)
class LegendrianCurve:
    """
    Legendrian curve together with the data it was built from.

    Attributes
    ----------
    matrix:
        Entry expressions (kind ``LEGENDRIAN``).
    basepoint:
        Point where every branch is principal.
    construction:
        Which constructor produced the curve.
    xi_form:
        ``dG/(G - G*)`` for curves built from a Gauss pair.
    xi:
        The xi expression (exact power product or path-integral node).
    c:
        Value of xi at the base point.
    gauss:
        Exact ``(G, G*)`` when known.
    """

    matrix: ExprMatrix
    basepoint: complex
    construction: Construction
    xi_form: Optional[Expr] = None
    xi: Optional[Expr] = None
    c: complex = 1.0
    gauss: Optional[tuple[Expr, Expr]] = None

    def entries(self) -> tuple[Expr, Expr, Expr, Expr]:
        return self.matrix.entries()

    @cached_property
    def forms(self) -> tuple[Expr, Expr]:
        """Canonical form and dual canonical form ``(omega, theta)`` as coefficients of dz."""
        return _extract_forms(self.matrix)

    @cached_property
    def singular_set(self) -> tuple[complex, ...]:
        """Poles and branch points visible in the entries."""
        found: list[complex] = []
        for e in self.entries():
            for p in singular_points(e):
                if not any(abs(p - q) <= 1e-9 * (1 + abs(p)) for q in found):
                    found.append(p)
        return tuple(found)

    def at(
        self,
        z: complex,
        path: Optional[PathC] = None,
        branch: Optional[BranchState] = None,
        clearance_factor: float = CLEARANCE_FACTOR,
    ) -> Mat2C:
        """
        Value of ``E`` at ``z``.

        Without a path, principal branches are used. With a path ending at
        ``z``, the entries are continued along it from ``branch`` (principal
        at the path start when omitted).
        """
        if path is None:
            return self.matrix.evaluate(z, branch)
        if abs(path.end - z) > 1e-12:
            raise ValueError(f"Path ends at {path.end}, not at z={z}.")
        m, _ = self.matrix.continue_along(path, branch, clearance_factor)
        return m

    def route_to(self, z: complex) -> Optional[PathC]:
        """Route from the base point to ``z`` around the singular set (None at the base point)."""
        if z == self.basepoint:
            return None
        return route(self.basepoint, z, self.singular_set)

    def continued_to(self, z: complex) -> Mat2C:
        """Value of ``E`` at ``z`` continued from the base point along ``route_to(z)``."""
        return self.at(z, self.route_to(z))


# ── Base point and xi ─────────────────────────────────────────────────────────

def choose_basepoint(
    form: Expr,
    candidates: Sequence[complex] = BASEPOINT_CANDIDATES,
    extra: Sequence[Expr] = (),
) -> complex:
    """
    Candidate farthest from the singular points of ``form`` and ``extra``.

    Candidates where any of the expressions cannot be evaluated are skipped;
    ties go to the earlier candidate.

    Raises
    ------
    DegenerateCurveError
        ``no-basepoint`` if every candidate is singular.
    """
    singular: list[complex] = list(singular_points(form))
    for e in extra:
        singular.extend(singular_points(e))
    best: Optional[complex] = None
    best_distance = -1.0
    for cand in candidates:
        try:
            values, _ = evaluate_many([form, *extra], cand)
        except (PoleError, BranchPointError):
            continue
        if not all(np.isfinite(v) for v in values):
            continue
        distance = min((abs(cand - p) for p in singular), default=math.inf)
        if distance > best_distance:
            best, best_distance = complex(cand), distance
    if best is None:
        raise DegenerateCurveError("no-basepoint", f"every candidate is singular for {form.source}")
    return best


def xi_form(pair: GaussPair) -> Expr:
    """Coefficient of the 1-form ``dG / (G - G*)``."""
    return nodes.div(differentiate(pair.G), nodes.sub(pair.G, pair.Gstar))


def _polynomial_expr(p: Polynomial) -> Expr:
    out: Expr = Const(0)
    for k, coef in enumerate(np.asarray(p.coef, dtype=complex)):
        if coef != 0:
            out = nodes.add(out, nodes.mul(Const(coef), nodes.int_power(Z, k)))
    return out


def elementary_xi(form: Expr, z0: complex, c: complex) -> Optional[Expr]:
    """
    Exact ``c exp(integral_{z0}^{z} form)`` when ``form`` is rational with simple poles.

    With ``form = P'(z) + sum r_j / (z - p_j)`` the result is
    ``c exp(P(z) - P(z0)) prod ((z - p_j)/(z0 - p_j))^{r_j}``, principal at ``z0``.
    Returns None when no such primitive exists.
    """
    try:
        pf = partial_fractions(form)
    except NotRationalError:
        return None
    if not pf.simple:
        return None
    out: Expr = Const(c)
    for pole, residue in pf.residues:
        if abs(residue) < _RESIDUE_SNAP:
            continue
        base = nodes.sub(Z, Const(pole))
        n = round(residue.real)
        if abs(residue - n) < _RESIDUE_SNAP:
            factor = nodes.div(nodes.int_power(base, n), Const(complex(z0 - pole) ** n))
        else:
            at_z0 = cmath.exp(residue * cmath.log(z0 - pole))
            factor = nodes.div(nodes.Pow(base, residue), Const(at_z0))
        out = nodes.mul(out, factor)
    primitive = pf.polynomial.integ()
    if np.any(np.asarray(primitive.coef) != 0):
        shift = _polynomial_expr(primitive - primitive(z0))
        out = nodes.mul(out, nodes.exp(shift))
    return out


def xi_at(
    pair: GaussPair,
    path: Optional[PathC] = None,
    abs_tol: float = QUAD_ABS_TOL,
    max_evals: int = QUAD_MAX_EVALS,
) -> complex:
    """
    ``c exp(integral of dG/(G - G*))`` along ``path``.

    An omitted path means the base point itself, where the value is ``c``.

    Raises
    ------
    ValueError
        If ``path`` does not start at the pair's base point.
    QuadratureError
        If the integral misses its accuracy target.
    PathClearanceError
        If the path runs through a pole of the form.
    """
    if path is None:
        return complex(pair.c)
    if pair.z0 is not None and abs(path.start - pair.z0) > 1e-12:
        raise ValueError(f"Path starts at {path.start}, not at the base point {pair.z0}.")
    form = xi_form(pair)
    check_clearance(path, singular_points(form))
    value, _ = path_integral(form, path, abs_tol=abs_tol, max_evals=max_evals)
    return complex(pair.c) * cmath.exp(value)


# ── Constructions ─────────────────────────────────────────────────────────────

def legendrian_from_gauss(pair: GaussPair) -> LegendrianCurve:
    """
    Legendrian curve with hyperbolic Gauss maps ``(G, G*)``::

        E = [[G/xi, xi G*/(G - G*)], [1/xi, xi/(G - G*)]]

    Its canonical form is ``-dG / xi^2``.

    Raises
    ------
    DegenerateCurveError
        ``constant-input``, ``G-identically-Gstar``, ``invalid-constant`` (c = 0)
        or ``invalid-basepoint``.
    """
    G, Gs = pair.G, pair.Gstar
    if is_constant(G) or is_constant(Gs):
        raise DegenerateCurveError("constant-input", f"G = {G.source}, G* = {Gs.source}")
    gap = nodes.sub(G, Gs)
    if is_identically_zero(gap, scale=[G, Gs]):
        raise DegenerateCurveError("G-identically-Gstar", f"G = G* = {G.source}")
    if pair.c == 0:
        raise DegenerateCurveError("invalid-constant", "c must be nonzero")
    form = xi_form(pair)
    z0 = complex(pair.z0) if pair.z0 is not None else choose_basepoint(form, extra=[G, Gs])
    try:
        (f0, gap0), _ = evaluate_many([form, gap], z0)
    except (PoleError, BranchPointError) as exc:
        raise DegenerateCurveError("invalid-basepoint", str(exc)) from exc
    if gap0 == 0 or not np.isfinite(f0):
        raise DegenerateCurveError("invalid-basepoint", f"G(z0) = G*(z0) at z0={z0}")

    xi = elementary_xi(form, z0, pair.c)
    if xi is None:
        logger.debug("No elementary primitive for %s; using quadrature", form.source)
        xi = ExpIntegral(form, z0, pair.c)
    matrix = ExprMatrix(
        A=nodes.div(G, xi),
        B=nodes.div(nodes.mul(xi, Gs), gap),
        C=nodes.div(Const(1), xi),
        D=nodes.div(xi, gap),
        kind=MatrixKind.LEGENDRIAN,
    )
    return LegendrianCurve(
        matrix=matrix,
        basepoint=z0,
        construction=Construction.FROM_GAUSS_PAIR,
        xi_form=form,
        xi=xi,
        c=complex(pair.c),
        gauss=(G, Gs),
    )


def legendrian_from_G_omega(
    G: Expr, omega: Expr, z0: Optional[complex] = None
) -> LegendrianCurve:
    """
    Legendrian curve with hyperbolic Gauss map ``G`` and canonical form ``omega``::

        C = i sqrt(omega / dG),  A = G C,  B = dA / omega,  D = dC / omega

    Raises
    ------
    DegenerateCurveError
        ``constant-G`` or ``zero-omega``.
    """
    if is_constant(G):
        raise DegenerateCurveError("constant-G", f"G = {G.source}")
    if is_identically_zero(omega):
        raise DegenerateCurveError("zero-omega", f"omega = {omega.source}")
    ratio = nodes.div(omega, differentiate(G))
    C = nodes.mul(_I, nodes.sqrt(ratio))
    A = nodes.mul(G, C)
    B = nodes.div(differentiate(A), omega)
    D = nodes.div(differentiate(C), omega)
    if z0 is None:
        z0 = choose_basepoint(ratio, extra=[G, omega])
    return LegendrianCurve(
        matrix=ExprMatrix(A, B, C, D, kind=MatrixKind.LEGENDRIAN),
        basepoint=complex(z0),
        construction=Construction.FROM_G_OMEGA,
    )


# ── Canonical forms, duality, Gauss maps ──────────────────────────────────────

def _extract_forms(matrix: ExprMatrix) -> tuple[Expr, Expr]:
    A, B, C, D = matrix.entries()
    if is_identically_zero(B) and is_identically_zero(D):
        raise DegenerateCurveError("all-branches-undefined", "B and D vanish identically")
    if is_identically_zero(A) and is_identically_zero(C):
        raise DegenerateCurveError("all-branches-undefined", "A and C vanish identically")
    dA, dB, dC, dD = matrix.derivative().entries()
    omega = nodes.sub(nodes.mul(A, dC), nodes.mul(C, dA))
    theta = nodes.sub(nodes.mul(D, dB), nodes.mul(B, dD))
    return omega, theta


def canonical_forms(E: LegendrianCurve) -> tuple[Expr, Expr]:
    """
    ``(omega, theta)`` read off ``E^{-1} dE = [[0, theta], [omega, 0]]``.

    Raises
    ------
    DegenerateCurveError
        ``all-branches-undefined`` when neither quotient expression for a
        form is defined (``B = D = 0`` or ``A = C = 0`` identically).
    """
    return E.forms


def dual_curve(E: LegendrianCurve) -> LegendrianCurve:
    """``E [[0, i], [i, 0]]``: swaps the Gauss maps and swaps omega with theta."""
    A, B, C, D = E.entries()
    matrix = ExprMatrix(
        nodes.mul(_I, B), nodes.mul(_I, A), nodes.mul(_I, D), nodes.mul(_I, C),
        kind=MatrixKind.LEGENDRIAN,
    )
    gauss = (E.gauss[1], E.gauss[0]) if E.gauss is not None else None
    return LegendrianCurve(matrix=matrix, basepoint=E.basepoint,
                           construction=Construction.EXPLICIT, gauss=gauss)


def parallel_curve(E: LegendrianCurve, t: float) -> LegendrianCurve:
    """
    Member ``E diag(e^{t/2}, e^{-t/2})`` of the parallel family of ``E``.

    The Gauss maps are unchanged; omega is scaled by ``e^t`` and theta by ``e^{-t}``.
    """
    s = cmath.exp(t / 2)
    A, B, C, D = E.entries()
    matrix = ExprMatrix(
        nodes.mul(Const(s), A), nodes.mul(Const(1 / s), B),
        nodes.mul(Const(s), C), nodes.mul(Const(1 / s), D),
        kind=MatrixKind.LEGENDRIAN,
    )
    return LegendrianCurve(matrix=matrix, basepoint=E.basepoint,
                           construction=Construction.EXPLICIT, gauss=E.gauss)


def _ratio(num: complex, den: complex) -> Optional[complex]:
    if den == 0:
        return None if num == 0 else INFINITY
    return num / den


def gauss_from_legendrian(
    E: LegendrianCurve,
    z: complex,
    path: Optional[PathC] = None,
    branch: Optional[BranchState] = None,
) -> tuple[complex, complex]:
    """
    Hyperbolic Gauss maps ``(A/C, B/D)`` at ``z``.

    A 0/0 quotient falls back to the exact Gauss maps when the curve carries them.

    Raises
    ------
    IndeterminateQuotientError
        If a quotient is 0/0 and cannot be resolved.
    """
    m = E.at(z, path, branch)
    G = _ratio(m.a, m.c)
    Gs = _ratio(m.b, m.d)
    if (G is None or Gs is None) and E.gauss is not None:
        (g_val, gs_val), _ = evaluate_many(list(E.gauss), z)
        G = complex(g_val) if G is None else G
        Gs = complex(gs_val) if Gs is None else Gs
    if G is None:
        raise IndeterminateQuotientError(z, "A/C")
    if Gs is None:
        raise IndeterminateQuotientError(z, "B/D")
    return G, Gs


def hopf_legendrian(pair: GaussPair) -> Expr:
    """Coefficient of the Hopf differential ``-dG dG* / (G - G*)^2``."""
    num = nodes.mul(differentiate(pair.G), differentiate(pair.Gstar))
    den = nodes.int_power(nodes.sub(pair.G, pair.Gstar), 2)
    return nodes.neg(nodes.div(num, den))


def schwarzian_of_primitive(form: Expr) -> Expr:
    """
    Schwarzian ``S(g)`` of any ``g`` with ``dg = form dz``, without integrating.

    Raises
    ------
    DegenerateCurveError
        ``constant-input`` when ``form`` vanishes identically.
    """
    if is_identically_zero(form):
        raise DegenerateCurveError("constant-input", "primitive of a zero form is constant")
    return schwarzian_from_log_derivative(nodes.div(differentiate(form), form))


def developing_maps(
    E: LegendrianCurve,
    path: Optional[PathC] = None,
    abs_tol: float = QUAD_ABS_TOL,
    max_evals: int = QUAD_MAX_EVALS,
) -> tuple[complex, complex]:
    """
    ``(g, g*)`` with ``dg = omega``, ``dg* = theta``, normalized to vanish at the path start.

    Raises
    ------
    QuadratureError
        If an integral misses its accuracy target.
    """
    if path is None:
        return 0j, 0j
    omega, theta = E.forms
    g, _ = path_integral(omega, path, abs_tol=abs_tol, max_evals=max_evals)
    gs, _ = path_integral(theta, path, abs_tol=abs_tol, max_evals=max_evals)
    return g, gs


# ── Residuals ─────────────────────────────────────────────────────────────────

def legendrian_residuals(E: LegendrianCurve, points: Sequence[complex]) -> dict[str, float]:
    """
    Largest relative residuals of the Legendrian identities over ``points``.

    Returns
    -------
    dict with ``det``, ``contact`` (D dA - B dC), ``mc_diagonal`` (diagonal of
    E^{-1} dE), ``omega_cross`` (omega against dA/B or dC/D) and ``theta_cross``
    (theta against dB/A or dD/C). Each cross-check uses the quotient with the
    larger denominator at every point.
    """
    z = np.asarray(points, dtype=complex)
    omega, theta = E.forms
    exprs = [*E.entries(), *E.matrix.derivative().entries(), omega, theta]
    values, _ = evaluate_many(exprs, z)
    a, b, c, d, da, db, dc, dd, w, t = values
    size = np.sqrt(np.abs(a) ** 2 + np.abs(b) ** 2 + np.abs(c) ** 2 + np.abs(d) ** 2)
    dsize = np.sqrt(np.abs(da) ** 2 + np.abs(db) ** 2 + np.abs(dc) ** 2 + np.abs(dd) ** 2)
    scale = 1.0 + size * dsize

    use_b = np.abs(b) >= np.abs(d)
    w_alt = np.where(use_b, da / np.where(use_b, b, 1.0), dc / np.where(use_b, 1.0, d))
    use_a = np.abs(a) >= np.abs(c)
    t_alt = np.where(use_a, db / np.where(use_a, a, 1.0), dd / np.where(use_a, 1.0, c))
    a22 = a * dd - c * db
    contact = d * da - b * dc
    return {
        "det": float(np.max(np.abs(a * d - b * c - 1.0))),
        "contact": float(np.max(np.abs(contact) / scale)),
        "mc_diagonal": float(np.max(np.maximum(np.abs(contact), np.abs(a22)) / scale)),
        "omega_cross": float(np.max(np.abs(w - w_alt) / (1.0 + np.abs(w)))),
        "theta_cross": float(np.max(np.abs(t - t_alt) / (1.0 + np.abs(t)))),
    }


# ── Conditions and monodromy ──────────────────────────────────────────────────

def check_conditions(
    pair: GaussPair,
    loops: Sequence[PathC],
    period_tol: float = PERIOD_TOL,
    abs_tol: float = QUAD_ABS_TOL,
    max_evals: int = QUAD_MAX_EVALS,
) -> ConditionsReport:
    """
    Test whether the curve of ``pair`` descends from the covering to the domain.

    Every pole of ``dG/(G - G*)`` (infinity included) must be simple, and its
    period over every loop must lie in ``pi i Z``.
    """
    form = xi_form(pair)
    try:
        pole_checks = tuple(
            PoleCheck(point=p, order=order, passed=order == 1) for p, order in form_poles(form)
        )
        available = True
    except NotRationalError:
        logger.info("Pole analysis unavailable for non-rational form %s", form.source)
        pole_checks, available = (), False

    period_checks = []
    for loop in loops:
        period = loop_period(form, loop, abs_tol=abs_tol, max_evals=max_evals)
        nearest = 1j * math.pi * round(period.imag / math.pi)
        passed = abs(period - nearest) < period_tol
        period_checks.append(PeriodCheck(loop=loop, period=period, nearest=nearest, passed=passed))

    descends = (
        available
        and all(pc.passed for pc in pole_checks)
        and all(pc.passed for pc in period_checks)
    )
    verdict = Verdict.DESCENDS if descends else Verdict.UNIVERSAL_COVER_ONLY
    logger.debug("Conditions for %s: %s", form.source, verdict.value)
    return ConditionsReport(
        pole_checks=pole_checks,
        period_checks=tuple(period_checks),
        pole_analysis_available=available,
        verdict=verdict,
    )


def classify_monodromy(m: Mat2C, tol: float = 1e-7) -> MonodromyClass:
    if psl_distance(m, Mat2C.identity()) < tol:
        return MonodromyClass.TRIVIAL
    if is_unitary(m, tol):
        return MonodromyClass.UNITARY_NONTRIVIAL
    return MonodromyClass.NONUNITARY


def monodromy(
    E: LegendrianCurve,
    loop: PathC,
    tol: float = 1e-7,
    clearance_factor: float = CLEARANCE_FACTOR,
    max_arg_step: float = MAX_ARG_STEP,
) -> MonodromyResult:
    """
    Matrix ``M`` with ``E`` continued around ``loop`` equal to ``E M``.

    The start value is principal at the loop's base point.

    Raises
    ------
    ContinuationError
        If continuation stalls.
    PathClearanceError
        If the loop runs too close to a singular point.
    """
    if not loop.closed:
        raise ValueError("monodromy requires a closed loop.")
    check_clearance(loop, E.singular_set, clearance_factor)
    tracker = BranchTracker(E.entries(), max_arg_step=max_arg_step)
    trail = tracker.follow(loop)
    start = Mat2C(*(complex(v) for v in trail[0][0]))
    end = Mat2C(*(complex(v) for v in trail[-1][0]))
    m = start.inverse() @ end
    result = MonodromyResult(loop=loop, matrix=m, classification=classify_monodromy(m, tol))
    logger.debug("Monodromy around loop at %s: %s", loop.start, result.classification.value)
    return result
