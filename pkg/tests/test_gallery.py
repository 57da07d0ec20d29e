"""
test_gallery.py – Unit tests for the gallery families and their published data.
"""

from __future__ import annotations

import cmath
import math

import pytest

from flatfront.constants import GALLERY_NAMES
from flatfront.curves.legendrian import gauss_from_legendrian, monodromy
from flatfront.exceptions import GalleryParameterError
from flatfront.gallery import GalleryEntry, build_entry, gallery_names
from flatfront.psl2 import Mat2C, psl_distance
from flatfront.types import AnnularGrid, MonodromyClass


class TestBuildEntry:
    """Dispatch and parameter validation."""

    def test_names(self) -> None:
        assert gallery_names() == GALLERY_NAMES
        assert set(gallery_names()) == {"equidistant", "revolution", "dihedral", "tetrahedral"}

    def test_defaults(self) -> None:
        for name in gallery_names():
            entry = build_entry(name)
            assert entry.name == name
            assert entry.basepoint == 2.0

    @pytest.mark.parametrize(
        "name, params, code",
        [
            ("dihedral", {"n": 1}, "invalid-n"),
            ("dihedral", {"n": 2.5}, "invalid-n"),
            ("equidistant", {"k": -1.0}, "nonpositive-k"),
            ("tetrahedral", {"k": 0.0}, "nonpositive-k"),
            ("revolution", {"mu": 1.0}, "invalid-mu"),
            ("revolution", {"mu": -0.5}, "invalid-mu"),
            ("equidistant", {"mu": 0.5}, "unknown-parameter"),
            ("catenoid", {}, "unknown-entry"),
        ],
    )
    def test_invalid_parameters(self, name: str, params: dict, code: str) -> None:
        with pytest.raises(GalleryParameterError) as exc_info:
            build_entry(name, params)
        assert exc_info.value.code == code


class TestPublishedData:
    """Values the families are known to take."""

    def test_equidistant_closed_form(self, equidistant_entry: GalleryEntry) -> None:
        E = equidistant_entry.curve()
        assert psl_distance(E.at(1.0), Mat2C(1j, 0.5j, 1j, -0.5j)) < 1e-12
        expected = equidistant_entry.expected_matrix(1.5)
        assert expected is not None
        assert psl_distance(E.at(1.5), expected) < 1e-12

    def test_dihedral_gauss_pair(self) -> None:
        E = build_entry("dihedral", {"n": 3, "k": 1.0}).curve()
        G, Gs = gauss_from_legendrian(E, 2.0)
        assert G == pytest.approx(2.0, rel=1e-9)
        assert Gs == pytest.approx(0.25, rel=1e-9)

    def test_tetrahedral_gauss_pair(self) -> None:
        E = build_entry("tetrahedral").curve()
        G, Gs = gauss_from_legendrian(E, 2.0)
        assert G == pytest.approx(2.0, rel=1e-9)
        assert Gs == pytest.approx(-1 / 3, rel=1e-9)

    def test_constructions_agree_at_base_point(self) -> None:
        for name in gallery_names():
            entry = build_entry(name)
            a = entry.curve().at(entry.basepoint)
            b = entry.curve_from_gauss().at(entry.basepoint)
            assert psl_distance(a, b) < 1e-10, name

    def test_revolution_monodromy(self) -> None:
        entry = build_entry("revolution", {"mu": 0.5})
        (deck,) = entry.deck_loops()
        result = monodromy(entry.curve(), deck.loop)
        assert psl_distance(result.matrix, Mat2C.diag(-1j, 1j)) < 1e-7
        assert psl_distance(deck.expected, Mat2C.diag(-1j, 1j)) < 1e-12
        assert result.classification is MonodromyClass.UNITARY_NONTRIVIAL

    def test_equidistant_monodromy_trivial(self, equidistant_entry: GalleryEntry) -> None:
        (deck,) = equidistant_entry.deck_loops()
        result = monodromy(equidistant_entry.curve(), deck.loop)
        assert result.classification is MonodromyClass.TRIVIAL

    def test_dihedral_loops_start_at_base_point(self) -> None:
        entry = build_entry("dihedral", {"n": 4, "k": 1.0})
        loops = entry.deck_loops()
        assert len(loops) == 4
        assert all(d.loop.closed and d.loop.start == entry.basepoint for d in loops)

    def test_mesh_plan(self) -> None:
        for name in gallery_names():
            plan = build_entry(name).mesh_plan(nr=8, ntheta=12)
            assert plan
            assert all(g.ntheta == 12 for g in plan if isinstance(g, AnnularGrid))

    def test_statements_cover_checks(self) -> None:
        for name in gallery_names():
            entry = build_entry(name)
            assert "monodromy" in entry.statements
            assert "gauss_pair" in entry.statements
            if entry.closed_form is not None:
                assert "closed_form" in entry.statements
            if entry.parallel_family:
                assert "parallel" in entry.statements


class TestDeckMonodromy:
    """Monodromy around the finite punctures."""

    @pytest.mark.parametrize(
        "name, params, expected",
        [
            ("dihedral", {"n": 3, "k": 1.0},
             Mat2C.diag(cmath.exp(-2j * math.pi / 3), cmath.exp(2j * math.pi / 3))),
            ("dihedral", {"n": 5, "k": 0.7},
             Mat2C.diag(cmath.exp(-2j * math.pi / 5), cmath.exp(2j * math.pi / 5))),
            ("tetrahedral", {"k": 1.0}, Mat2C.diag(-1j, 1j)),
        ],
    )
    def test_published_values(self, name: str, params: dict, expected: Mat2C) -> None:
        entry = build_entry(name, params)
        E = entry.curve()
        for deck in entry.deck_loops():
            assert psl_distance(deck.expected, expected) < 1e-12
            result = monodromy(E, deck.loop)
            assert psl_distance(result.matrix, expected) < 1e-7, deck.label
            assert result.classification is MonodromyClass.UNITARY_NONTRIVIAL

    def test_composition(self) -> None:
        entry = build_entry("dihedral", {"n": 3, "k": 1.0})
        E = entry.curve()
        first, second = (d.loop for d in entry.deck_loops()[:2])
        m1 = monodromy(E, first).matrix
        m2 = monodromy(E, second).matrix
        both = monodromy(E, first.then(second)).matrix
        assert psl_distance(both, m1 @ m2) < 1e-7
        zeta = cmath.exp(2j * math.pi / 3)
        assert psl_distance(both, Mat2C.diag(zeta**-2, zeta**2)) < 1e-7
