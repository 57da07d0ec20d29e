"""
diff.py – Exact symbolic differentiation with respect to ``z``.

Derivative formulas reuse the original node objects wherever possible, so a
derivative of a multivalued node shares its branch key with the node itself.
"""

from __future__ import annotations

from functools import singledispatch

from flatfront.expr import nodes
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
)


@singledispatch
def differentiate(e: Expr) -> Expr:
    """Return d e / d z as a new expression."""
    raise NotImplementedError(f"Cannot differentiate {type(e).__name__}")


@differentiate.register(Const)
def _(e: Const) -> Expr:
    return Const(0)


@differentiate.register(Var)
def _(e: Var) -> Expr:
    return Const(1)


@differentiate.register(Add)
def _(e: Add) -> Expr:
    return nodes.add(differentiate(e.left), differentiate(e.right))


@differentiate.register(Sub)
def _(e: Sub) -> Expr:
    return nodes.sub(differentiate(e.left), differentiate(e.right))


@differentiate.register(Mul)
def _(e: Mul) -> Expr:
    return nodes.add(
        nodes.mul(differentiate(e.left), e.right),
        nodes.mul(e.left, differentiate(e.right)),
    )


@differentiate.register(Div)
def _(e: Div) -> Expr:
    num = nodes.sub(
        nodes.mul(differentiate(e.left), e.right),
        nodes.mul(e.left, differentiate(e.right)),
    )
    return nodes.div(num, nodes.int_power(e.right, 2))


@differentiate.register(Neg)
def _(e: Neg) -> Expr:
    return nodes.neg(differentiate(e.arg))


@differentiate.register(IntPow)
def _(e: IntPow) -> Expr:
    n = e.exponent
    return nodes.mul(
        nodes.mul(Const(n), nodes.int_power(e.base, n - 1)),
        differentiate(e.base),
    )


@differentiate.register(Pow)
def _(e: Pow) -> Expr:
    # Same base object, so the lowered power keeps the branch key of e.
    lowered = Pow(e.base, e.exponent - 1)
    return nodes.mul(nodes.mul(Const(e.exponent), lowered), differentiate(e.base))


@differentiate.register(Sqrt)
def _(e: Sqrt) -> Expr:
    return nodes.div(differentiate(e.arg), nodes.mul(Const(2), e))


@differentiate.register(Exp)
def _(e: Exp) -> Expr:
    return nodes.mul(e, differentiate(e.arg))


@differentiate.register(Log)
def _(e: Log) -> Expr:
    return nodes.div(differentiate(e.arg), e.arg)


@differentiate.register(ExpIntegral)
def _(e: ExpIntegral) -> Expr:
    return nodes.mul(e, e.form)


def nth_derivative(e: Expr, n: int) -> Expr:
    for _ in range(n):
        e = differentiate(e)
    return e
