"""
rational.py – Pole and zero analysis for the rational subclass of expressions.

A rational expression (no exp, log, sqrt, complex power or path integral) is
converted to a numerator/denominator pair of ``numpy.polynomial.Polynomial``
with complex coefficients. Common factors are cancelled by matching clustered
roots, which is exact enough for the low-degree data this package handles.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial

from flatfront.constants import ROOT_CLUSTER_TOL
from flatfront.exceptions import NotRationalError
from flatfront.expr import nodes
from flatfront.expr.nodes import (
    LOG_TYPES,
    Add,
    Const,
    Div,
    ExpIntegral,
    Expr,
    IntPow,
    Mul,
    Neg,
    Sub,
    Var,
)
from flatfront.psl2 import INFINITY, is_infinite

logger = logging.getLogger(__name__)

_ONE = Polynomial([1.0 + 0j])


def _trim(p: Polynomial) -> Polynomial:
    coef = np.asarray(p.coef, dtype=complex)
    scale = float(np.max(np.abs(coef))) if coef.size else 0.0
    if scale == 0.0:
        return Polynomial([0j])
    return Polynomial(coef).trim(1e-14 * scale)


def _is_zero(p: Polynomial) -> bool:
    return bool(np.all(np.asarray(p.coef) == 0))


def cluster_roots(p: Polynomial, tol: float = ROOT_CLUSTER_TOL) -> list[tuple[complex, int]]:
    """Roots of ``p`` with multiplicities, merging numerically split multiple roots."""
    p = _trim(p)
    if p.degree() < 1 or _is_zero(p):
        return []
    roots = sorted(np.asarray(p.roots(), dtype=complex), key=lambda r: (r.real, r.imag))
    clusters: list[list[complex]] = []
    # Multiple roots split by about eps**(1/m); compare against a looser radius.
    radius = max(tol, 1e-4)
    for r in roots:
        for cl in clusters:
            center = sum(cl) / len(cl)
            if abs(r - center) <= radius * (1 + abs(center)):
                cl.append(r)
                break
        else:
            clusters.append([r])
    out = []
    for cl in clusters:
        center = _snap(sum(cl) / len(cl))
        out.append((center, len(cl)))
    return out


def _snap(z: complex, tol: float = 1e-12) -> complex:
    re = 0.0 if abs(z.real) < tol else z.real
    im = 0.0 if abs(z.imag) < tol else z.imag
    return complex(re, im)


@dataclass(frozen=True, eq=False)
class RationalFunction:
    """
    ``numerator / denominator`` as complex polynomials.

    Attributes
    ----------
    numerator, denominator:
        Polynomials in z; the denominator is never identically zero.
    """

    numerator: Polynomial
    denominator: Polynomial
    _reduced: list["RationalFunction"] = field(default_factory=list, compare=False, repr=False)

    def __call__(self, z: complex) -> complex:
        return complex(self.numerator(z) / self.denominator(z))

    @property
    def is_zero(self) -> bool:
        return _is_zero(_trim(self.numerator))

    def reduced(self) -> "RationalFunction":
        """Cancel common roots of numerator and denominator."""
        if self._reduced:
            return self._reduced[0]
        num, den = _trim(self.numerator), _trim(self.denominator)
        if _is_zero(num):
            out = RationalFunction(Polynomial([0j]), _ONE)
        else:
            zeros = cluster_roots(num)
            poles = cluster_roots(den)
            kept_poles = []
            for p, mp in poles:
                for idx, (q, mq) in enumerate(zeros):
                    if abs(p - q) <= 1e-6 * (1 + abs(p)):
                        common = min(mp, mq)
                        zeros[idx] = (q, mq - common)
                        mp -= common
                        break
                if mp:
                    kept_poles.append((p, mp))
            kept_zeros = [(q, m) for q, m in zeros if m]
            lead = complex(num.coef[-1] / den.coef[-1])
            out = RationalFunction(
                lead * _from_roots(kept_zeros), _from_roots(kept_poles)
            )
        self._reduced.append(out)
        return out

    def zeros(self) -> list[tuple[complex, int]]:
        return cluster_roots(self.reduced().numerator)

    def poles(self) -> list[tuple[complex, int]]:
        return cluster_roots(self.reduced().denominator)

    def degree_difference(self) -> int:
        """deg(numerator) - deg(denominator) after reduction."""
        r = self.reduced()
        return int(_trim(r.numerator).degree() - _trim(r.denominator).degree())


def _from_roots(roots: list[tuple[complex, int]]) -> Polynomial:
    flat = [r for r, m in roots for _ in range(m)]
    if not flat:
        return _ONE
    return Polynomial(np.asarray(Polynomial.fromroots(flat).coef, dtype=complex))


def to_rational(e: Expr) -> RationalFunction:
    """
    Convert a rational expression to a ``RationalFunction``.

    Raises
    ------
    NotRationalError
        If ``e`` contains exp, log, sqrt, a complex power or a path integral.
    """
    memo: dict[int, tuple[Polynomial, Polynomial]] = {}

    def conv(node: Expr) -> tuple[Polynomial, Polynomial]:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Const):
            out = (Polynomial([node.value]), _ONE)
        elif isinstance(node, Var):
            out = (Polynomial([0j, 1 + 0j]), _ONE)
        elif isinstance(node, (Add, Sub)):
            (p1, q1), (p2, q2) = conv(node.left), conv(node.right)
            num = p1 * q2 + p2 * q1 if isinstance(node, Add) else p1 * q2 - p2 * q1
            out = (_trim(num), _trim(q1 * q2))
        elif isinstance(node, Mul):
            (p1, q1), (p2, q2) = conv(node.left), conv(node.right)
            out = (_trim(p1 * p2), _trim(q1 * q2))
        elif isinstance(node, Div):
            (p1, q1), (p2, q2) = conv(node.left), conv(node.right)
            out = (_trim(p1 * q2), _trim(q1 * p2))
        elif isinstance(node, Neg):
            p, q = conv(node.arg)
            out = (-p, q)
        elif isinstance(node, IntPow):
            p, q = conv(node.base)
            n = node.exponent
            out = (p ** n, q ** n) if n >= 0 else (q ** (-n), p ** (-n))
        else:
            raise NotRationalError(type(node).__name__)
        memo[key] = out
        return out

    num, den = conv(e)
    if _is_zero(_trim(den)):
        raise NotRationalError("identically zero denominator")
    return RationalFunction(num, den)


# ── Orders ────────────────────────────────────────────────────────────────────

def _order_at(rf: RationalFunction, p: complex) -> int:
    """Signed order: positive for a pole, negative for a zero."""
    if is_infinite(p):
        return rf.degree_difference()
    order = 0
    for q, m in rf.poles():
        if abs(q - p) <= 1e-6 * (1 + abs(p)):
            order += m
    for q, m in rf.zeros():
        if abs(q - p) <= 1e-6 * (1 + abs(p)):
            order -= m
    return order


def pole_order(e: Expr, p: complex) -> int:
    """
    Order of the pole of ``e`` at ``p`` (0 if regular or a zero).

    ``p`` may be ``INFINITY``, meaning the order of the function at infinity
    under ``z -> 1/w``.
    """
    return max(_order_at(to_rational(e), p), 0)


def zero_order(e: Expr, p: complex) -> int:
    """Multiplicity of the zero of ``e`` at ``p`` (0 if none)."""
    return max(-_order_at(to_rational(e), p), 0)


def order_at_infinity(e: Expr, as_form: bool = False) -> int:
    """
    Signed order at infinity.

    For a function this is deg P - deg Q. For the 1-form ``e dz`` the
    substitution ``z = 1/w`` contributes ``dz = -dw / w^2``, adding 2.
    """
    d = to_rational(e).degree_difference()
    return d + 2 if as_form else d


def poles(e: Expr) -> list[tuple[complex, int]]:
    """Finite poles of a rational expression with their orders."""
    return to_rational(e).poles()


def form_poles(e: Expr) -> list[tuple[complex, int]]:
    """Poles of the 1-form ``e dz`` on the Riemann sphere, infinity included."""
    out = list(poles(e))
    at_inf = order_at_infinity(e, as_form=True)
    if at_inf > 0:
        out.append((INFINITY, at_inf))
    return out


# ── Partial fractions ─────────────────────────────────────────────────────────

@dataclass(frozen=True)
class PartialFractions:
    """
    ``f = polynomial + sum residue / (z - pole)`` when all poles are simple.

    Attributes
    ----------
    polynomial:
        Polynomial part.
    residues:
        Pole -> residue for every finite pole.
    simple:
        False if some finite pole has order > 1 (residues are then incomplete).
    """

    polynomial: Polynomial
    residues: tuple[tuple[complex, complex], ...]
    simple: bool


def partial_fractions(e: Expr) -> PartialFractions:
    rf = to_rational(e).reduced()
    quotient, remainder = divmod(rf.numerator, rf.denominator)
    pole_list = cluster_roots(rf.denominator)
    simple = all(m == 1 for _, m in pole_list)
    dq = rf.denominator.deriv()
    residues = []
    for p, m in pole_list:
        if m == 1:
            residues.append((p, _snap(complex(remainder(p) / dq(p)))))
    return PartialFractions(_trim(quotient), tuple(residues), simple)


# ── Singularities ─────────────────────────────────────────────────────────────

def singular_points(e: Expr) -> list[complex]:
    """
    Finite poles and branch points discoverable from rational subterms.

    Collects poles of every maximal rational subterm, zeros and poles of every
    rational log-type argument, and poles of rational path-integral forms.
    Singularities hidden inside transcendental subterms are not found.
    """
    found: list[complex] = []

    def note(points: list[tuple[complex, int]]) -> None:
        for p, _ in points:
            if not any(abs(p - q) <= 1e-9 * (1 + abs(p)) for q in found):
                found.append(p)

    for node in nodes.walk(e):
        if isinstance(node, (Div, IntPow)):
            try:
                note(to_rational(node).poles())
            except NotRationalError:
                if isinstance(node, Div):
                    try:
                        note(to_rational(node.right).zeros())
                    except NotRationalError:
                        pass
        elif isinstance(node, LOG_TYPES):
            arg = nodes.branch_argument(node)
            try:
                rf = to_rational(arg)
            except NotRationalError:
                continue
            note(rf.zeros())
            note(rf.poles())
        elif isinstance(node, ExpIntegral):
            try:
                note(to_rational(node.form).poles())
            except NotRationalError:
                continue
    return found


def winding_sources(e: Expr) -> tuple[list[list[tuple[complex, int]]], bool]:
    """
    Zeros and poles, with multiplicity, of each log-type argument in ``e``.

    One group per distinct argument. The arg of a rational ``f`` turns by at
    most ``sum(m) * |dz| / (d - |dz|)`` over a step ``dz`` taken at distance
    ``d`` from its group. Arguments inside path-integral forms are included,
    and each rational form adds its poles as a group of its own. The flag is
    False when some log-type argument is not rational.
    """
    groups: dict[str, list[tuple[complex, int]]] = {}
    complete = True
    for node in nodes.walk(e):
        if isinstance(node, LOG_TYPES):
            arg = nodes.branch_argument(node)
            if arg.source in groups:
                continue
            try:
                rf = to_rational(arg)
            except NotRationalError:
                complete = False
                continue
            groups[arg.source] = rf.zeros() + rf.poles()
        elif isinstance(node, ExpIntegral) and "int:" + node.form.source not in groups:
            try:
                groups["int:" + node.form.source] = to_rational(node.form).poles()
            except NotRationalError:
                continue
    return [g for g in groups.values() if g], complete
