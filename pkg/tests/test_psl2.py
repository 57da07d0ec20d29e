"""
test_psl2.py – Unit tests for 2x2 complex matrices and the Moebius action.
"""

from __future__ import annotations

import numpy as np
import pytest

from flatfront.psl2 import (
    INFINITY,
    Mat2C,
    is_infinite,
    is_unitary,
    moebius_apply,
    moebius_matrix,
    normalize_unimodular,
    psl_distance,
    random_unimodular,
    random_unitary,
)


def _random_point(rng: np.random.Generator) -> complex:
    return complex(rng.normal(), rng.normal())


class TestMat2C:
    """Matrix algebra."""

    def test_inverse(self) -> None:
        m = Mat2C(2.0, 1.0 + 1j, 0.5j, 3.0)
        assert psl_distance(m @ m.inverse(), Mat2C.identity()) < 1e-12

    def test_singular_inverse_raises(self) -> None:
        with pytest.raises(ZeroDivisionError):
            Mat2C(1.0, 2.0, 2.0, 4.0).inverse()

    def test_dagger(self) -> None:
        m = Mat2C(1j, 2.0, 3.0 - 1j, 4.0)
        d = m.dagger()
        assert (d.a, d.b, d.c, d.d) == (-1j, 3.0 + 1j, 2.0, 4.0)

    def test_normalize_unimodular(self) -> None:
        m = normalize_unimodular(Mat2C(2.0, 1.0, 1.0, 3.0))
        assert m.is_unimodular(1e-12)


class TestPSLDistance:
    """Comparison modulo sign."""

    def test_sign_is_ignored(self) -> None:
        m = Mat2C(1.0, 2.0, 0.5, 2.0)
        assert psl_distance(m, -m) == 0.0

    def test_distinct_classes(self) -> None:
        assert psl_distance(Mat2C.identity(), Mat2C.diag(1j, -1j)) > 1.0

    def test_random_unitary(self) -> None:
        rng = np.random.default_rng(3)
        for _ in range(20):
            u = random_unitary(rng)
            assert is_unitary(u)
            assert u.is_unimodular()


class TestMoebius:
    """Action on the Riemann sphere, infinity included."""

    def test_inverse_action(self) -> None:
        rng = np.random.default_rng(0)
        for _ in range(100):
            a = random_unimodular(rng)
            w = _random_point(rng)
            back = moebius_apply(a, moebius_apply(a.inverse(), w))
            assert abs(back - w) < 1e-9 * (1.0 + abs(w))

    def test_action_property(self) -> None:
        rng = np.random.default_rng(1)
        for _ in range(100):
            a, b = random_unimodular(rng), random_unimodular(rng)
            w = _random_point(rng)
            lhs = moebius_apply(a @ b, w)
            rhs = moebius_apply(a, moebius_apply(b, w))
            if is_infinite(lhs) or is_infinite(rhs):
                continue
            assert abs(lhs - rhs) < 1e-7 * (1.0 + abs(lhs))

    def test_infinity_maps_to_a_over_c(self) -> None:
        m = moebius_matrix(1.0, 2.0, 3.0, 4.0, normalize=False)
        assert moebius_apply(m, INFINITY) == pytest.approx(1.0 / 3.0)

    def test_pole_maps_to_infinity(self) -> None:
        m = moebius_matrix(1.0, 0.0, 1.0, -2.0, normalize=False)
        assert is_infinite(moebius_apply(m, 2.0))

    def test_affine_map_fixes_infinity(self) -> None:
        assert is_infinite(moebius_apply(Mat2C.diag(2.0, 0.5), INFINITY))
