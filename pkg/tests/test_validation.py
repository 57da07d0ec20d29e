"""
test_validation.py – Unit tests for the identity suites and verification reports.
"""

from __future__ import annotations

import json
import math

import pytest

from flatfront.config_resolver import ResolvedConfig
from flatfront.data.schema import build_curve, gallery_spec, spec_from_dict
from flatfront.data.validation import VerificationReport, run_verification
from flatfront.types import Verdict
from flatfront.utils.io import dumps_stable


def _verify(doc: dict, cfg: ResolvedConfig) -> VerificationReport:
    return run_verification(build_curve(spec_from_dict(doc)), cfg)


class TestNullSuite:
    """Null curves in PSL(2,C)."""

    def test_small_null_passes(self, cfg: ResolvedConfig) -> None:
        report = _verify({"kind": "null_small", "G": "z", "g": "z^2"}, cfg)
        assert report.passed, report.failures()
        names = {r.name for r in report.records}
        assert {"det", "det_dF", "gauss_maps", "secondary_gauss_mc", "schwarzian"} <= names

    def test_moebius_pair_reported(self, cfg: ResolvedConfig) -> None:
        report = _verify({"kind": "null_small", "G": "z", "g": "2*z + 1"}, cfg)
        assert not report.passed
        (record,) = report.failures()
        assert record.name == "g-is-moebius-of-G"
        assert math.isinf(record.max_residual)


class TestLegendrianSuite:
    """Legendrian curves and the gallery."""

    def test_gauss_pair_passes_and_descends(self, cfg: ResolvedConfig) -> None:
        report = _verify({"kind": "legendrian_gauss", "G": "z", "Gstar": "-z"}, cfg)
        assert report.passed, report.failures()
        assert report.conditions is not None
        assert report.conditions.verdict is Verdict.DESCENDS

    def test_equidistant_gallery_passes(self, cfg: ResolvedConfig) -> None:
        report = run_verification(build_curve(gallery_spec("equidistant", {"k": 2.0})), cfg)
        assert report.passed, report.failures()
        names = {r.name for r in report.records}
        assert {"closed_form", "cross_construction", "monodromy", "descent"} <= names
        assert len(report.monodromy) == 1

    @pytest.mark.parametrize(
        "name, params",
        [
            ("dihedral", {"n": 3, "k": 1.0}),
            ("dihedral", {"n": 5, "k": 0.7}),
            ("tetrahedral", {"k": 1.0}),
            ("revolution", {"mu": 0.3}),
        ],
    )
    def test_gallery_entries_pass(self, cfg: ResolvedConfig, name: str, params: dict) -> None:
        report = run_verification(build_curve(gallery_spec(name, params)), cfg)
        assert report.passed, report.failures()
        by_name = {r.name: r for r in report.records}
        assert by_name["cross_construction"].max_residual < 1e-8
        assert "monodromy" in by_name and "descent" in by_name
        if name == "dihedral":
            assert "symmetry" in by_name
            assert len(report.monodromy) == int(params["n"])


class TestC3Suite:
    """Null curves in C^3."""

    def test_integral_free_passes(self, cfg: ResolvedConfig) -> None:
        report = _verify({"kind": "c3_integral_free", "g": "z", "h": "z^3/6"}, cfg)
        assert report.passed, report.failures()

    def test_weierstrass_passes(self, cfg: ResolvedConfig) -> None:
        report = _verify({"kind": "c3_weierstrass", "g": "z", "omega": "1"}, cfg)
        assert report.passed, report.failures()


class TestReport:
    """Fingerprints and serialization."""

    def test_fingerprint_is_deterministic(self, cfg: ResolvedConfig) -> None:
        doc = {"kind": "null_small", "G": "z", "g": "z^2"}
        a = _verify(doc, cfg)
        b = _verify(doc, cfg)
        assert a.fingerprint == b.fingerprint
        assert len(a.fingerprint) == 64
        assert dumps_stable(a.to_dict()) == dumps_stable(b.to_dict())

    def test_fingerprint_depends_on_spec(self, cfg: ResolvedConfig) -> None:
        a = _verify({"kind": "null_small", "G": "z", "g": "z^2"}, cfg)
        b = _verify({"kind": "null_small", "G": "z", "g": "z^3"}, cfg)
        assert a.fingerprint != b.fingerprint

    def test_frame_and_dict(self, cfg: ResolvedConfig) -> None:
        report = _verify({"kind": "legendrian_gauss", "G": "z", "Gstar": "-z"}, cfg)
        frame = report.to_frame()
        assert len(frame) == len(report.records)
        assert "max_residual" in frame.columns
        doc = json.loads(dumps_stable(report.to_dict()))
        assert doc["passed"] is True
        assert doc["conditions"]["verdict"] == Verdict.DESCENDS.value
        assert doc["subject"] == report.subject
