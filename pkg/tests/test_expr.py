"""
test_expr.py – Unit tests for expression parsing, differentiation, evaluation and periods.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from flatfront.exceptions import (
    BranchPointError,
    ExprSyntaxError,
    NotRationalError,
    PoleError,
    UnknownIdentifierError,
)
from flatfront.expr import (
    continue_along,
    differentiate,
    evaluate,
    evaluate_many,
    form_poles,
    loop_period,
    nth_derivative,
    parse_expr,
    pole_order,
    poles,
    singular_points,
    to_source,
    zero_order,
)
from flatfront.constants import SEGMENT_CACHE_SIZE
from flatfront.expr.evaluate import principal_segment_integral
from flatfront.expr.nodes import ExpIntegral
from flatfront.expr.rational import winding_sources
from flatfront.psl2 import is_infinite
from flatfront.types import PathC


def _value(source: str, z: complex, **params: float) -> complex:
    return complex(evaluate(parse_expr(source, params), z))


class TestParser:
    """Grammar, precedence and error reporting."""

    def test_unary_minus_binds_looser_than_power(self) -> None:
        assert _value("-z^2", 2.0) == pytest.approx(-4.0)

    def test_negative_exponent(self) -> None:
        assert _value("z^-2", 2.0) == pytest.approx(0.25)

    def test_power_is_right_associative(self) -> None:
        assert _value("2^3^2", 1.0) == pytest.approx(512.0)

    def test_imaginary_unit(self) -> None:
        assert _value("i*i", 1.0) == pytest.approx(-1.0)

    def test_parameters_are_bound(self) -> None:
        assert _value("k/(2*z)", 1.0, k=4.0) == pytest.approx(2.0)

    def test_pow_function(self) -> None:
        assert _value("pow(z, 0.5)", 4.0) == pytest.approx(2.0)

    def test_syntax_error_position(self) -> None:
        with pytest.raises(ExprSyntaxError) as exc_info:
            parse_expr("z +* 2")
        assert exc_info.value.position == 3
        assert exc_info.value.code == "syntax-error"

    def test_unbalanced_parenthesis(self) -> None:
        with pytest.raises(ExprSyntaxError):
            parse_expr("(z + 1")

    def test_unknown_identifier(self) -> None:
        with pytest.raises(UnknownIdentifierError) as exc_info:
            parse_expr("foo + z")
        assert exc_info.value.name == "foo"
        assert exc_info.value.position == 0

    def test_reserved_parameter_name(self) -> None:
        with pytest.raises(ValueError):
            parse_expr("z", {"z": 1.0})

    def test_source_roundtrip(self) -> None:
        e = parse_expr("(z^3 - 1)^(-1/2) + exp(2*z)")
        again = parse_expr(to_source(e))
        assert to_source(again) == to_source(e)


class TestDifferentiation:
    """Symbolic derivatives checked against closed forms."""

    def test_polynomial(self) -> None:
        d = differentiate(parse_expr("z^3"))
        assert complex(evaluate(d, 2.0)) == pytest.approx(12.0)

    def test_quotient(self) -> None:
        d = differentiate(parse_expr("1/(z - 1)"))
        assert complex(evaluate(d, 3.0)) == pytest.approx(-0.25)

    def test_sqrt_chain_rule(self) -> None:
        d = differentiate(parse_expr("sqrt(z^2 + 1)"))
        z = 0.7 + 0.2j
        assert complex(evaluate(d, z)) == pytest.approx(z / cmath.sqrt(z * z + 1))

    def test_third_derivative(self) -> None:
        d3 = nth_derivative(parse_expr("exp(2*z)"), 3)
        assert complex(evaluate(d3, 0.5)) == pytest.approx(8 * math.exp(1.0))


class TestEvaluation:
    """Scalar and array evaluation, poles and branch points."""

    def test_pole_raises(self) -> None:
        with pytest.raises(PoleError) as exc_info:
            evaluate(parse_expr("1/(z - 1)"), 1.0)
        assert exc_info.value.point == 1.0

    def test_branch_point_raises(self) -> None:
        with pytest.raises(BranchPointError):
            evaluate(parse_expr("sqrt(z)"), 0.0)

    def test_array_evaluation(self) -> None:
        z = np.array([1.0, 2.0, 3.0 + 1j])
        (values,), _ = evaluate_many([parse_expr("z^2 + 1")], z)
        assert values.shape == (3,)
        assert np.allclose(values, z**2 + 1)

    def test_shared_branch_keys(self) -> None:
        a = parse_expr("sqrt(z)")
        b = parse_expr("1/sqrt(z)")
        (va, vb), record = evaluate_many([a, b], -1.0 + 0.1j)
        assert va * vb == pytest.approx(1.0)
        assert len(record) == 1

    def test_negative_real_argument_takes_upper_side(self) -> None:
        expected = 1j * math.sqrt(2 / 3)
        assert _value("sqrt(2/(3*z))", -1.0) == pytest.approx(expected, abs=1e-12)
        (values,), _ = evaluate_many([parse_expr("sqrt(2/(3*z))")], np.array([-1.0, -2.0]))
        assert values[0] == pytest.approx(expected, abs=1e-12)
        assert _value("log(2/(3*z))", -1.0).imag == pytest.approx(math.pi)

    def test_segment_cache_keys_on_tolerance(self) -> None:
        principal_segment_integral.cache_clear()
        node = ExpIntegral(parse_expr("1/z"), 1.0)
        loose = principal_segment_integral(node, 2.0 + 0j, 1e-4)
        tight = principal_segment_integral(node, 2.0 + 0j, 1e-12)
        info = principal_segment_integral.cache_info()
        assert info.currsize == 2
        assert info.maxsize == SEGMENT_CACHE_SIZE
        assert tight == pytest.approx(math.log(2.0), abs=1e-10)
        assert loose == pytest.approx(math.log(2.0), abs=1e-4)


class TestRationalAnalysis:
    """Poles, orders and singular points."""

    def test_simple_poles(self) -> None:
        found = poles(parse_expr("1/(z^2 - 1)"))
        assert [p for p, _ in found] == pytest.approx([-1.0, 1.0])
        assert all(order == 1 for _, order in found)

    def test_double_pole_order(self) -> None:
        assert pole_order(parse_expr("1/(z - 1)^2"), 1.0) == 2

    def test_zero_order(self) -> None:
        e = parse_expr("z^2*(z - 1)/(z + 2)")
        assert zero_order(e, 0.0) == 2
        assert zero_order(e, 1.0) == 1
        assert zero_order(e, -2.0) == 0
        assert zero_order(e, 3.0) == 0

    def test_winding_sources(self) -> None:
        groups, complete = winding_sources(parse_expr("log(z^3 - 1) + sqrt(1/z^2)"))
        assert complete
        assert sorted(sum(m for _, m in g) for g in groups) == [2, 3]
        _, complete = winding_sources(parse_expr("sqrt(exp(z))"))
        assert not complete
        (group,), _ = winding_sources(ExpIntegral(parse_expr("1/(z - 1)"), 2.0))
        assert group == [(pytest.approx(1.0), 1)]

    def test_form_pole_at_infinity(self) -> None:
        found = form_poles(parse_expr("1/(2*z)"))
        assert len(found) == 2
        assert any(is_infinite(p) and order == 1 for p, order in found)

    def test_not_rational(self) -> None:
        with pytest.raises(NotRationalError):
            poles(parse_expr("exp(z)"))

    def test_branch_points_are_singular(self) -> None:
        found = singular_points(parse_expr("(z^3 - 1)^(-1/2)"))
        assert len(found) == 3
        assert all(abs(abs(p) - 1.0) < 1e-9 for p in found)


class TestContinuation:
    """Analytic continuation and loop periods."""

    def test_sqrt_changes_sign_around_zero(self) -> None:
        value, _ = continue_along(parse_expr("sqrt(z)"), PathC.circle(0j, 1.0))
        assert value == pytest.approx(-1.0, abs=1e-10)

    def test_period_of_dz_over_z(self) -> None:
        period = loop_period(parse_expr("1/z"), PathC.circle(0j, 1.0))
        assert abs(period - 2j * math.pi) < 1e-8

    def test_period_of_half_residue(self) -> None:
        period = loop_period(parse_expr("1/(2*z)"), PathC.circle(0j, 0.5))
        assert abs(period - 1j * math.pi) < 1e-8

    def test_open_path_rejected(self) -> None:
        with pytest.raises(ValueError):
            loop_period(parse_expr("1/z"), PathC.segment(1.0, 2.0))

    def test_long_segment_keeps_winding(self) -> None:
        e = parse_expr("log(z^3 - 1)")
        end = -0.5 - 1.2j
        coarse, _ = continue_along(e, PathC.segment(2.0, end))
        fine, _ = continue_along(e, PathC.polyline(np.linspace(2.0, end, 401)))
        assert abs(coarse - fine) < 1e-9
        assert coarse.real == pytest.approx(0.2817, abs=1e-4)
        assert coarse.imag == pytest.approx(0.6747 - 2 * math.pi, abs=1e-4)

    def test_transcendental_argument_keeps_winding(self) -> None:
        # exp(z) turns once and a bit along this segment.
        path = PathC.segment(0.0, (2 * math.pi + 0.3) * 1j)
        value, _ = continue_along(parse_expr("sqrt(exp(z))"), path)
        assert value == pytest.approx(cmath.exp((math.pi + 0.15) * 1j), abs=1e-10)

    def test_keyhole_loop(self) -> None:
        loop = PathC.keyhole(1.0, 0.5, (2.0, 1.5), n=32)
        assert loop.closed and loop.start == 2.0
        value, _ = continue_along(parse_expr("sqrt(z - 1)"), loop)
        assert value == pytest.approx(-1.0, abs=1e-10)
        with pytest.raises(ValueError):
            PathC.keyhole(1.0, 0.5, (2.0, 1.7))
