"""
test_outputs.py – Unit tests for PLY export, report files and sample rows.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from flatfront.config_resolver import ResolvedConfig
from flatfront.data.outputs import ply_text, sample_rows, write_ply, write_report
from flatfront.data.schema import build_curve, gallery_spec, spec_from_dict
from flatfront.data.validation import run_verification
from flatfront.types import FrontMesh


def _make_mesh(sing: float = 0.5) -> FrontMesh:
    return FrontMesh(
        vertices=np.array([[0.0, 0.0, 0.0], [0.5, 0.0, 0.0], [0.0, 0.5, 0.0]]),
        faces=np.array([[0, 1, 2]], dtype=np.int64),
        sing=np.array([sing, 0.0, -1.0]),
        dsigma2=np.array([1.0, 2.0, 3.0]),
        params=np.array([1.0, 1.5, 1.0 + 0.5j]),
    )


class TestPly:
    """ASCII PLY export."""

    def test_header_and_body(self) -> None:
        lines = ply_text(_make_mesh()).splitlines()
        assert lines[0] == "ply"
        assert lines[1] == "format ascii 1.0"
        assert "element vertex 3" in lines
        assert "element face 1" in lines
        assert "property list uchar int vertex_indices" in lines
        body = lines[lines.index("end_header") + 1:]
        assert len(body) == 4
        assert body[1].split() == ["0.5", "0", "0", "0", "2"]
        assert body[-1] == "3 0 1 2"

    def test_write(self, tmp_path: Path) -> None:
        path = write_ply(_make_mesh(), tmp_path / "out" / "front.ply")
        assert path.read_text(encoding="ascii").startswith("ply\n")

    def test_non_finite_rejected(self, tmp_path: Path) -> None:
        with pytest.raises(ValueError):
            write_ply(_make_mesh(sing=float("nan")), tmp_path / "front.ply")
        assert not (tmp_path / "front.ply").exists()


class TestReportFile:
    """Report JSON on disk."""

    def test_write_report(self, tmp_path: Path, cfg: ResolvedConfig) -> None:
        built = build_curve(spec_from_dict({"kind": "null_small", "G": "z", "g": "2*z + 1"}))
        path = write_report(run_verification(built, cfg), tmp_path / "report.json")
        doc = json.loads(path.read_text(encoding="utf-8"))
        assert doc["passed"] is False
        assert doc["records"][0]["name"] == "g-is-moebius-of-G"
        assert doc["records"][0]["max_residual"] == "inf"


class TestSampleRows:
    """Per-point rows for every kind."""

    def test_equidistant_front(self, cfg: ResolvedConfig) -> None:
        built = build_curve(gallery_spec("equidistant", {"k": 2.0}))
        (row,) = sample_rows(built, [1.0 + 0j], cfg)
        assert row["ball"] == pytest.approx([1 / 3, 0.0, 0.0], abs=1e-9)
        assert row["dsigma2"] == pytest.approx(1.0 - 1 / 16)

    def test_c3_row(self, cfg: ResolvedConfig) -> None:
        built = build_curve(spec_from_dict({"kind": "c3_integral_free", "g": "z", "h": "z^3/6"}))
        (row,) = sample_rows(built, [1.0 + 0j], cfg)
        assert row["F"] == pytest.approx([1 / 3, 2j / 3, 0.5])

    def test_null_row(self, cfg: ResolvedConfig) -> None:
        built = build_curve(spec_from_dict({"kind": "null_small", "G": "z", "g": "z^2"}))
        (row,) = sample_rows(built, [1.5 + 0j], cfg)
        assert row["G"] == pytest.approx(1.5)
        assert row["g"] == pytest.approx(2.25)

    def test_no_points(self, cfg: ResolvedConfig) -> None:
        built = build_curve(gallery_spec("equidistant", {"k": 2.0}))
        assert sample_rows(built, [], cfg) == []
