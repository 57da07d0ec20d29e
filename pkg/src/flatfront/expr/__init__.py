"""Meromorphic expressions: parsing, differentiation, evaluation, continuation and periods."""

from flatfront.expr.continuation import continue_along, continue_many, loop_period, path_integral
from flatfront.expr.diff import differentiate, nth_derivative
from flatfront.expr.evaluate import evaluate, evaluate_many
from flatfront.expr.nodes import Expr, to_source
from flatfront.expr.parser import parse_expr
from flatfront.expr.rational import (
    form_poles,
    order_at_infinity,
    partial_fractions,
    pole_order,
    poles,
    singular_points,
    zero_order,
)

__all__ = [
    "Expr",
    "continue_along",
    "continue_many",
    "differentiate",
    "evaluate",
    "evaluate_many",
    "form_poles",
    "loop_period",
    "nth_derivative",
    "order_at_infinity",
    "parse_expr",
    "partial_fractions",
    "path_integral",
    "pole_order",
    "poles",
    "singular_points",
    "to_source",
    "zero_order",
]
