"""
test_c3_null.py – Unit tests for null curves in C^3.
"""

from __future__ import annotations

import pytest

from flatfront.curves.c3_null import (
    C3Curve,
    WeierstrassData,
    c3_legendrian,
    contact_residual,
    extract_h_data,
    extract_weierstrass,
    integral_free_null,
    nullity_residual,
    weierstrass_at,
    weierstrass_basepoint,
)
from flatfront.exceptions import DegenerateCurveError, VerificationError
from flatfront.expr import evaluate, parse_expr

_EXPECTED_AT_ONE = (1 / 3, 2j / 3, 0.5)


def _make_cubic() -> C3Curve:
    return integral_free_null(parse_expr("z"), parse_expr("z^3/6"))


class TestIntegralFree:
    """Null curves from (g, h) by differentiation alone."""

    def test_value_at_one(self) -> None:
        assert _make_cubic().at(1.0) == pytest.approx(_EXPECTED_AT_ONE)

    def test_nullity(self) -> None:
        assert nullity_residual(_make_cubic()) < 1e-12

    def test_nullity_with_poles(self) -> None:
        F = integral_free_null(parse_expr("z^2 + 1/z"), parse_expr("exp(z)/z"))
        assert nullity_residual(F) < 1e-9

    def test_constant_g_rejected(self) -> None:
        with pytest.raises(DegenerateCurveError) as exc_info:
            integral_free_null(parse_expr("2"), parse_expr("z"))
        assert exc_info.value.reason == "constant-g"


class TestExtraction:
    """Weierstrass data and h read back off a curve."""

    def test_weierstrass_data(self) -> None:
        data = extract_weierstrass(_make_cubic())
        assert complex(evaluate(data.g, 1.3)) == pytest.approx(1.3)
        assert complex(evaluate(data.omega, 1.3)) == pytest.approx(1.0)

    def test_h_recovered(self) -> None:
        h, h1, h2 = extract_h_data(_make_cubic())
        z = 0.8 - 0.3j
        assert complex(evaluate(h, z)) == pytest.approx(z**3 / 6)
        assert complex(evaluate(h1, z)) == pytest.approx(z**2 / 2)
        assert complex(evaluate(h2, z)) == pytest.approx(z)

    def test_non_null_curve_rejected(self) -> None:
        F = C3Curve(parse_expr("z"), parse_expr("z"), parse_expr("z"))
        with pytest.raises(VerificationError):
            extract_weierstrass(F)


class TestWeierstrassIntegration:
    """The Weierstrass integral from the base point."""

    def test_integral_matches_integral_free_curve(self) -> None:
        data = WeierstrassData(g=parse_expr("z"), omega=parse_expr("1"))
        assert weierstrass_basepoint(data) == 0j
        assert weierstrass_at(data, 1.0) == pytest.approx(_EXPECTED_AT_ONE, abs=1e-9)

    def test_declared_basepoint(self) -> None:
        data = WeierstrassData(g=parse_expr("z"), omega=parse_expr("1"), basepoint=1.0)
        assert weierstrass_at(data, 1.0) == (0j, 0j, 0j)


class TestLegendrianC3:
    """Legendrian curves for the standard contact form."""

    def test_contact_form_vanishes(self) -> None:
        F = c3_legendrian(parse_expr("z^3 + exp(z)"), parse_expr("z^2 + 1"))
        assert contact_residual(F) < 1e-12
