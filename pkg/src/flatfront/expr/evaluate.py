"""
evaluate.py – Numerical evaluation of expression trees on a chosen branch.

``evaluate`` works on a scalar ``z`` or on an ndarray of points. Multivalued
nodes read their branch from a ``BranchState``: each log-type argument takes
the logarithm closest to its anchor, and each ``ExpIntegral`` continues its
stored integral from the state's point. With an empty state every branch is
principal and path integrals start from their own base point.

Evaluations record the branch values they used; continuation turns that record
into the next ``BranchState``.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Sequence
from functools import lru_cache, singledispatchmethod
from typing import Any, Optional

import numpy as np

from flatfront.constants import QUAD_ABS_TOL, SEGMENT_CACHE_SIZE
from flatfront.exceptions import BranchPointError, PoleError
from flatfront.expr.nodes import (
    Add,
    Const,
    Div,
    Exp,
    ExpIntegral,
    Expr,
    IntPow,
    Log,
    Mul,
    Neg,
    Pow,
    Sqrt,
    Sub,
    Var,
    branch_argument,
    branch_key,
)
from flatfront.expr.quadrature import integrate_segment
from flatfront.types import BranchState, Scalar

logger = logging.getLogger(__name__)

_TWO_PI = 2 * math.pi


def _first_bad(z: Scalar, mask: Any) -> complex:
    if isinstance(z, np.ndarray) and z.ndim:
        return complex(np.broadcast_to(z, np.shape(mask))[np.argmax(mask)])
    return complex(z)


def _unsigned_zero(b: Scalar) -> Scalar:
    """Replace a -0.0 imaginary part by +0.0 so negative reals take Arg = pi."""
    if isinstance(b, np.ndarray):
        out = np.array(b, dtype=complex)
        out.imag += 0.0
        return out
    b = complex(b)
    return complex(b.real, b.imag + 0.0)


class _Evaluator:
    """One evaluation pass: memo by node identity plus a record of branch values."""

    def __init__(self, z: Scalar, branch: BranchState, quad_tol: float) -> None:
        self.z = z
        self.branch = branch
        self.quad_tol = quad_tol
        self.memo: dict[int, Scalar] = {}
        self.record: dict[str, Scalar] = {}

    def value(self, node: Expr) -> Scalar:
        key = id(node)
        if key not in self.memo:
            self.memo[key] = self._eval(node)
        return self.memo[key]

    # ── Branch handling ──────────────────────────────────────────────────────

    def log_of(self, node: Expr) -> Scalar:
        arg = branch_argument(node)
        b = self.value(arg)
        zero = np.asarray(b) == 0
        if np.any(zero):
            raise BranchPointError(_first_bad(self.z, zero))
        b = _unsigned_zero(b)
        w = np.log(b) if isinstance(b, np.ndarray) else cmath.log(b)
        key = branch_key(node)
        anchor = self.branch.anchors.get(key)
        if anchor is not None:
            turns = np.round((np.imag(anchor) - np.imag(w)) / _TWO_PI)
            w = w + 1j * _TWO_PI * turns
            if not isinstance(w, np.ndarray):
                w = complex(w)
        self.record[key] = w
        return w

    # ── Node dispatch ────────────────────────────────────────────────────────

    @singledispatchmethod
    def _eval(self, node: Expr) -> Scalar:
        raise TypeError(f"Cannot evaluate {type(node).__name__}")

    @_eval.register(Const)
    def _(self, node: Const) -> Scalar:
        return node.value

    @_eval.register(Var)
    def _(self, node: Var) -> Scalar:
        return self.z

    @_eval.register(Add)
    def _(self, node: Add) -> Scalar:
        return self.value(node.left) + self.value(node.right)

    @_eval.register(Sub)
    def _(self, node: Sub) -> Scalar:
        return self.value(node.left) - self.value(node.right)

    @_eval.register(Mul)
    def _(self, node: Mul) -> Scalar:
        return self.value(node.left) * self.value(node.right)

    @_eval.register(Div)
    def _(self, node: Div) -> Scalar:
        den = self.value(node.right)
        zero = np.asarray(den) == 0
        if np.any(zero):
            raise PoleError(_first_bad(self.z, zero), node.source)
        return self.value(node.left) / den

    @_eval.register(Neg)
    def _(self, node: Neg) -> Scalar:
        return -self.value(node.arg)

    @_eval.register(IntPow)
    def _(self, node: IntPow) -> Scalar:
        b = self.value(node.base)
        if node.exponent < 0:
            zero = np.asarray(b) == 0
            if np.any(zero):
                raise PoleError(_first_bad(self.z, zero), node.source)
        return b ** node.exponent

    @_eval.register(Exp)
    def _(self, node: Exp) -> Scalar:
        a = self.value(node.arg)
        return np.exp(a) if isinstance(a, np.ndarray) else cmath.exp(a)

    @_eval.register(Log)
    def _(self, node: Log) -> Scalar:
        return self.log_of(node)

    @_eval.register(Sqrt)
    def _(self, node: Sqrt) -> Scalar:
        w = self.log_of(node)
        return np.exp(0.5 * w) if isinstance(w, np.ndarray) else cmath.exp(0.5 * w)

    @_eval.register(Pow)
    def _(self, node: Pow) -> Scalar:
        w = self.log_of(node)
        return np.exp(node.exponent * w) if isinstance(w, np.ndarray) else cmath.exp(
            node.exponent * w
        )

    @_eval.register(ExpIntegral)
    def _(self, node: ExpIntegral) -> Scalar:
        # Evaluate the form too so its own branch values are recorded.
        self.value(node.form)
        key = branch_key(node)
        anchor = self.branch.anchors.get(key)
        if isinstance(self.z, np.ndarray) and self.z.ndim:
            flat = np.empty(self.z.shape, dtype=complex)
            for idx in np.ndindex(self.z.shape):
                flat[idx] = self._integral(node, complex(self.z[idx]), self.branch.take(idx),
                                           None if anchor is None else np.asarray(anchor)[idx]
                                           if np.ndim(anchor) else anchor)
            integral: Scalar = flat
        else:
            integral = self._integral(node, complex(self.z), self.branch, anchor)
        self.record[key] = integral
        return node.c * (np.exp(integral) if isinstance(integral, np.ndarray)
                         else cmath.exp(integral))

    def _integral(
        self, node: ExpIntegral, z: complex, branch: BranchState, anchor: Optional[Scalar]
    ) -> complex:
        if anchor is not None and branch.point is not None:
            start = complex(branch.point)
            value, _ = integrate_segment(
                lambda t: complex(evaluate(node.form, t, branch, self.quad_tol)),
                start, z, abs_tol=self.quad_tol,
            )
            return complex(anchor) + value
        return principal_segment_integral(node, z, self.quad_tol)


@lru_cache(maxsize=SEGMENT_CACHE_SIZE)
def principal_segment_integral(node: ExpIntegral, z: complex, quad_tol: float) -> complex:
    """Integral of ``node.form`` along the straight segment from ``node.z0`` to ``z``."""
    value, _ = integrate_segment(
        lambda t: complex(evaluate(node.form, t, BranchState(), quad_tol)),
        node.z0, z, abs_tol=quad_tol,
    )
    return value


def evaluate_many(
    exprs: Sequence[Expr],
    z: Scalar,
    branch: Optional[BranchState] = None,
    quad_tol: float = QUAD_ABS_TOL,
) -> tuple[list[Scalar], dict[str, Scalar]]:
    """
    Evaluate several expressions in one pass so shared branch keys agree.

    Returns
    -------
    (values, record) where ``record`` maps every branch key met to the value used.
    """
    branch = branch or BranchState()
    if isinstance(z, np.ndarray):
        z = z.astype(complex)
    ev = _Evaluator(z, branch, quad_tol)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        values = [ev.value(e) for e in exprs]
    if isinstance(z, np.ndarray):
        values = [np.broadcast_to(np.asarray(v, dtype=complex), z.shape).copy() for v in values]
    else:
        values = [complex(v) for v in values]
    return values, ev.record


def evaluate(
    e: Expr, z: Scalar, branch: Optional[BranchState] = None, quad_tol: float = QUAD_ABS_TOL
) -> Scalar:
    """
    Value of ``e`` at ``z`` on ``branch`` (principal when omitted).

    Raises
    ------
    PoleError
        If a denominator vanishes at ``z``.
    BranchPointError
        If a log-type argument vanishes at ``z``.
    """
    values, _ = evaluate_many([e], z, branch, quad_tol)
    return values[0]
