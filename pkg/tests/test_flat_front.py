"""
test_flat_front.py – Unit tests for the projection E E* to hyperbolic space.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from flatfront.constants import SING_CLIP
from flatfront.curves.legendrian import legendrian_from_G_omega
from flatfront.exceptions import FrontBranchPointError
from flatfront.expr import parse_expr
from flatfront.front.flat_front import (
    HermitianPoint,
    apply_isometry,
    ball_coordinates,
    fundamental_forms,
    hyperbolic_distance,
    project_matrix,
    sample_front,
    singularity_array,
    singularity_indicator,
    to_poincare,
)
from flatfront.gallery import build_entry
from flatfront.psl2 import Mat2C, random_unimodular, random_unitary


class TestProjection:
    """Hermitian points and the Poincare ball."""

    def test_equidistant_ball_point(self) -> None:
        x = project_matrix(Mat2C(1j, 0.5j, 1j, -0.5j))
        assert to_poincare(x) == pytest.approx((1 / 3, 0.0, 0.0), abs=1e-12)

    def test_origin(self) -> None:
        assert to_poincare(project_matrix(Mat2C.identity())) == pytest.approx((0.0, 0.0, 0.0))

    def test_sign_and_unitary_invariance(self) -> None:
        rng = np.random.default_rng(5)
        m = random_unimodular(rng)
        u = random_unitary(rng)
        base = project_matrix(m).x
        for other in (-m, m @ u):
            assert (project_matrix(other).x - base).frobenius() < 1e-10 * (1 + base.frobenius())

    def test_ball_norm_below_one(self) -> None:
        rng = np.random.default_rng(6)
        for _ in range(50):
            ball = to_poincare(project_matrix(random_unimodular(rng, scale=3.0)))
            assert math.hypot(*ball) < 1.0

    def test_vectorized_coordinates_match(self) -> None:
        rng = np.random.default_rng(7)
        mats = [random_unimodular(rng) for _ in range(5)]
        arr = ball_coordinates(*(np.array([getattr(m, k) for m in mats]) for k in "abcd"))
        for row, m in zip(arr, mats):
            assert tuple(row) == pytest.approx(to_poincare(project_matrix(m)), abs=1e-12)

    def test_non_hermitian_rejected(self) -> None:
        with pytest.raises(ValueError):
            HermitianPoint(Mat2C(1.0, 1j, 0.0, 1.0))

    def test_isometry_preserves_distance(self) -> None:
        rng = np.random.default_rng(8)
        x = project_matrix(random_unimodular(rng))
        y = project_matrix(random_unimodular(rng))
        a = random_unimodular(rng)
        before = hyperbolic_distance(x, y)
        after = hyperbolic_distance(apply_isometry(a, x), apply_isometry(a, y))
        assert after == pytest.approx(before, rel=1e-8)


class TestForms:
    """Fundamental forms and the singularity indicator."""

    def test_dsigma2(self) -> None:
        _, dsigma2 = fundamental_forms(2.0 + 0j, 1.0j)
        assert dsigma2 == pytest.approx(3.0)

    def test_first_form_is_degenerate_on_singular_set(self) -> None:
        (e, f, g), _ = fundamental_forms(1.0 + 0j, -1.0 + 0j)
        assert e * g - f * f == pytest.approx(0.0, abs=1e-12)

    def test_indicator(self) -> None:
        assert singularity_indicator(1.0, 0.25) == pytest.approx(math.log(4.0))
        assert singularity_indicator(0.0, 1.0) == -math.inf

    def test_both_zero_raises(self) -> None:
        with pytest.raises(FrontBranchPointError):
            singularity_indicator(0.0, 0.0)

    def test_array_is_clipped(self) -> None:
        sing = singularity_array(np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]))
        assert list(sing) == [SING_CLIP, -SING_CLIP, 0.0]


class TestSampleFront:
    """Front data at a single point."""

    def test_equidistant_sample(self) -> None:
        E = legendrian_from_G_omega(parse_expr("z"), parse_expr("1/z"), z0=2.0)
        s = sample_front(E, 1.0)
        assert s.ball == pytest.approx((1 / 3, 0.0, 0.0), abs=1e-12)
        assert s.sing == pytest.approx(math.log(4.0))
        assert s.dsigma2 == pytest.approx(1.0 - 1 / 16)

    def test_revolution_singular_on_unit_circle(self) -> None:
        E = build_entry("revolution", {"mu": 0.5}).curve()
        s = sample_front(E, 1j)
        assert s.sing == pytest.approx(0.0, abs=1e-10)
