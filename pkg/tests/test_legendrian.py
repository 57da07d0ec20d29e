"""
test_legendrian.py – Unit tests for Legendrian curves, their forms, conditions and monodromy.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from flatfront.curves.legendrian import (
    GaussPair,
    LegendrianCurve,
    canonical_forms,
    check_conditions,
    developing_maps,
    dual_curve,
    gauss_from_legendrian,
    hopf_legendrian,
    legendrian_from_G_omega,
    legendrian_from_gauss,
    legendrian_residuals,
    monodromy,
    parallel_curve,
    xi_at,
    xi_form,
)
from flatfront.exceptions import DegenerateCurveError
from flatfront.expr import evaluate, parse_expr
from flatfront.psl2 import Mat2C, psl_distance
from flatfront.types import Construction, MonodromyClass, PathC, Verdict

_POINTS = [0.7 + 0.3j, 1.3 - 0.4j, 1.9 + 1.1j, 0.5 + 1.2j]


def _make_equidistant() -> LegendrianCurve:
    return legendrian_from_G_omega(parse_expr("z"), parse_expr("1/z"), z0=2.0)


def _make_pair(G: str, Gstar: str, z0: complex = 2.0) -> GaussPair:
    return GaussPair(G=parse_expr(G), Gstar=parse_expr(Gstar), z0=z0)


class TestFromGOmega:
    """Construction from the Gauss map and the canonical form."""

    def test_equidistant_value(self) -> None:
        E = _make_equidistant()
        expected = Mat2C(1j, 0.5j, 1j, -0.5j)
        assert psl_distance(E.at(1.0), expected) < 1e-12

    def test_identities(self) -> None:
        E = _make_equidistant()
        res = legendrian_residuals(E, _POINTS)
        assert all(v < 1e-10 for v in res.values()), res

    def test_canonical_form_recovered(self) -> None:
        E = _make_equidistant()
        omega, theta = E.forms
        for z in _POINTS:
            assert complex(evaluate(omega, z)) == pytest.approx(1 / z, rel=1e-10)
            assert complex(evaluate(theta, z)) == pytest.approx(1 / (4 * z), rel=1e-10)

    def test_construction_tag(self) -> None:
        assert _make_equidistant().construction is Construction.FROM_G_OMEGA

    def test_zero_omega_rejected(self) -> None:
        with pytest.raises(DegenerateCurveError) as exc_info:
            legendrian_from_G_omega(parse_expr("z"), parse_expr("0"))
        assert exc_info.value.reason == "zero-omega"

    def test_constant_G_rejected(self) -> None:
        with pytest.raises(DegenerateCurveError) as exc_info:
            legendrian_from_G_omega(parse_expr("1"), parse_expr("z"))
        assert exc_info.value.reason == "constant-G"

    def test_scaling_omega_moves_along_parallel_family(self) -> None:
        E = _make_equidistant()
        scaled = legendrian_from_G_omega(parse_expr("z"), parse_expr("3/z"), z0=2.0)
        shifted = parallel_curve(E, math.log(3.0))
        for z in _POINTS:
            assert psl_distance(scaled.at(z), shifted.at(z)) < 1e-10


class TestFromGauss:
    """Construction from the Gauss pair."""

    def test_identities(self) -> None:
        E = legendrian_from_gauss(_make_pair("z", "-z"))
        res = legendrian_residuals(E, _POINTS)
        assert all(v < 1e-10 for v in res.values()), res

    def test_gauss_maps_recovered(self) -> None:
        E = legendrian_from_gauss(_make_pair("z^2", "1/z"))
        for z in _POINTS:
            G, Gs = gauss_from_legendrian(E, z)
            assert G == pytest.approx(z**2, rel=1e-9)
            assert Gs == pytest.approx(1 / z, rel=1e-9)

    def test_xi_is_elementary_for_rational_pairs(self) -> None:
        E = legendrian_from_gauss(_make_pair("z", "-z"))
        assert E.xi is not None
        # xi = (z / 2)^(1/2) for the base point 2
        assert complex(evaluate(E.xi, 0.5)) == pytest.approx(0.5)

    def test_canonical_form(self) -> None:
        pair = _make_pair("z", "-z")
        E = legendrian_from_gauss(pair)
        omega, _ = E.forms
        for z in _POINTS:
            xi = complex(evaluate(E.xi, z))
            assert complex(evaluate(omega, z)) == pytest.approx(-1 / xi**2, rel=1e-9)

    def test_hopf_differential(self) -> None:
        pair = _make_pair("z", "-z")
        E = legendrian_from_gauss(pair)
        omega, theta = E.forms
        q = hopf_legendrian(pair)
        for z in _POINTS:
            wt = complex(evaluate(omega, z) * evaluate(theta, z))
            assert wt == pytest.approx(complex(evaluate(q, z)), rel=1e-9)

    def test_identical_maps_rejected(self) -> None:
        with pytest.raises(DegenerateCurveError) as exc_info:
            legendrian_from_gauss(_make_pair("z", "z"))
        assert exc_info.value.reason == "G-identically-Gstar"

    def test_zero_constant_rejected(self) -> None:
        pair = GaussPair(G=parse_expr("z"), Gstar=parse_expr("-z"), z0=2.0, c=0.0)
        with pytest.raises(DegenerateCurveError) as exc_info:
            legendrian_from_gauss(pair)
        assert exc_info.value.reason == "invalid-constant"

    def test_non_elementary_xi_uses_quadrature(self) -> None:
        pair = _make_pair("exp(z)", "z")
        E = legendrian_from_gauss(pair)
        res = legendrian_residuals(E, [1.1 + 0.2j, 2.3 - 0.1j])
        assert res["det"] < 1e-8


class TestDuality:
    """Dual and parallel curves."""

    def test_dual_is_an_involution(self) -> None:
        E = _make_equidistant()
        twice = dual_curve(dual_curve(E))
        for z in _POINTS:
            assert psl_distance(twice.at(z), E.at(z)) < 1e-12

    def test_dual_swaps_forms(self) -> None:
        E = _make_equidistant()
        omega, theta = E.forms
        d_omega, d_theta = dual_curve(E).forms
        for z in _POINTS:
            assert complex(evaluate(d_omega, z)) == pytest.approx(
                complex(evaluate(theta, z)), rel=1e-10)
            assert complex(evaluate(d_theta, z)) == pytest.approx(
                complex(evaluate(omega, z)), rel=1e-10)

    def test_parallel_scales_forms(self) -> None:
        E = _make_equidistant()
        t = 0.7
        omega, theta = E.forms
        p_omega, p_theta = parallel_curve(E, t).forms
        z = 1.3 - 0.4j
        assert complex(evaluate(p_omega, z)) == pytest.approx(
            math.exp(t) * complex(evaluate(omega, z)), rel=1e-10)
        assert complex(evaluate(p_theta, z)) == pytest.approx(
            math.exp(-t) * complex(evaluate(theta, z)), rel=1e-10)


class TestConditions:
    """Descent conditions and monodromy."""

    def test_equidistant_pair_descends(self) -> None:
        pair = _make_pair("z", "-z")
        report = check_conditions(pair, [PathC.circle(0j, 0.5)])
        assert report.pole_analysis_available
        assert report.verdict is Verdict.DESCENDS
        assert abs(report.period_checks[0].period - 1j * math.pi) < 1e-8

    def test_double_pole_fails(self) -> None:
        pair = _make_pair("z", "z + z^2")
        report = check_conditions(pair, [])
        assert report.verdict is Verdict.UNIVERSAL_COVER_ONLY
        assert any(not pc.passed for pc in report.pole_checks)

    def test_non_rational_form_is_cover_only(self) -> None:
        pair = _make_pair("exp(z)", "z")
        report = check_conditions(pair, [])
        assert not report.pole_analysis_available
        assert report.verdict is Verdict.UNIVERSAL_COVER_ONLY

    def test_xi_form(self) -> None:
        form = xi_form(_make_pair("z", "-z"))
        assert complex(evaluate(form, 2.0)) == pytest.approx(0.25)

    def test_sign_monodromy_is_trivial(self) -> None:
        result = monodromy(_make_equidistant(), PathC.circle(0j, 2.0))
        assert result.classification is MonodromyClass.TRIVIAL

    def test_quarter_turn_monodromy(self) -> None:
        E = legendrian_from_G_omega(parse_expr("z"), parse_expr("z^(-1/2)"), z0=2.0)
        result = monodromy(E, PathC.circle(0j, 2.0))
        # C is proportional to z^(-1/4).
        expected = Mat2C.diag(cmath.exp(-0.5j * math.pi), cmath.exp(0.5j * math.pi))
        assert psl_distance(result.matrix, expected) < 1e-7
        assert result.classification is MonodromyClass.UNITARY_NONTRIVIAL

    def test_open_loop_rejected(self) -> None:
        with pytest.raises(ValueError):
            monodromy(_make_equidistant(), PathC.segment(2.0, 3.0))

    def test_evaluation_arrays_agree_with_scalars(self) -> None:
        E = _make_equidistant()
        a, b, c, d = E.matrix.evaluate_array(np.array(_POINTS))
        m = E.at(_POINTS[1])
        assert psl_distance(Mat2C(a[1], b[1], c[1], d[1]), m) < 1e-12


class TestIntegrals:
    """xi and the developing maps by quadrature."""

    def test_xi_along_path(self) -> None:
        pair = _make_pair("z", "-z")
        assert xi_at(pair) == pytest.approx(1.0)
        assert xi_at(pair, PathC.segment(2.0, 0.5)) == pytest.approx(0.5, rel=1e-9)

    def test_xi_path_must_start_at_base_point(self) -> None:
        with pytest.raises(ValueError):
            xi_at(_make_pair("z", "-z"), PathC.segment(1.0, 0.5))

    def test_developing_maps(self) -> None:
        E = _make_equidistant()
        assert developing_maps(E) == (0j, 0j)
        g, gs = developing_maps(E, PathC.segment(2.0, 4.0))
        assert g == pytest.approx(math.log(2.0), rel=1e-9)
        assert gs == pytest.approx(math.log(2.0) / 4, rel=1e-9)

    def test_canonical_forms(self) -> None:
        E = _make_equidistant()
        omega, theta = canonical_forms(E)
        assert complex(evaluate(omega, 1.5)) == pytest.approx(1 / 1.5, rel=1e-10)
        assert complex(evaluate(theta, 1.5)) == pytest.approx(1 / 6.0, rel=1e-10)
