"""
test_cli.py – End-to-end tests of the flatfront command line through click's runner.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Iterator
from pathlib import Path
from typing import Any, Callable

import pytest
from click.testing import CliRunner, Result

from flatfront.cli.main import cli


@pytest.fixture(autouse=True)
def _reset_logging() -> Iterator[None]:
    yield
    # The CLI binds a handler to the runner's stderr, which is closed afterwards.
    logging.getLogger("flatfront").handlers.clear()


def _invoke(*args: str) -> Result:
    return CliRunner().invoke(cli, ["--log-level", "error", *args])


def _json_lines(result: Result) -> list[Any]:
    """Every output line that parses as a JSON object or array."""
    out = []
    for line in result.output.splitlines():
        if line.startswith(("{", "[")):
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError:
                continue
    return out


def _error_code(result: Result) -> str:
    errors = [doc for doc in _json_lines(result) if isinstance(doc, dict) and "error" in doc]
    assert errors, result.output
    return errors[-1]["error"]


class TestGallery:
    """``flatfront gallery``."""

    def test_list(self) -> None:
        result = _invoke("gallery", "list")
        assert result.exit_code == 0, result.output
        for name in ("equidistant", "revolution", "dihedral", "tetrahedral"):
            assert name in result.output

    def test_build_summary(self) -> None:
        result = _invoke("gallery", "build", "dihedral", "--param", "n=3")
        assert result.exit_code == 0, result.output
        (doc,) = [d for d in _json_lines(result) if isinstance(d, dict) and "name" in d]
        assert doc["name"] == "dihedral"
        assert len(doc["finite_punctures"]) == 3

    def test_invalid_parameter(self) -> None:
        result = _invoke("gallery", "build", "dihedral", "--param", "n=1")
        assert result.exit_code == 2
        assert _error_code(result) == "invalid-n"

    def test_unknown_entry(self) -> None:
        result = _invoke("gallery", "build", "catenoid")
        assert result.exit_code == 2
        assert _error_code(result) == "unknown-entry"

    def test_malformed_parameter(self) -> None:
        result = _invoke("gallery", "build", "dihedral", "--param", "n3")
        assert result.exit_code == 2
        assert _error_code(result) == "usage-error"

    def test_mesh_with_grid(self, tmp_path: Path) -> None:
        out = tmp_path / "front.ply"
        result = _invoke("gallery", "build", "equidistant", "--param", "k=2",
                         "--grid", "0.5,2,4,8", "--mesh", str(out))
        assert result.exit_code == 0, result.output
        text = out.read_text(encoding="ascii")
        assert text.startswith("ply\n")
        assert "element vertex 32" in text

    def test_report(self, tmp_path: Path) -> None:
        out = tmp_path / "report.json"
        result = _invoke("gallery", "build", "equidistant", "--report", str(out),
                         "--samples", "20")
        assert result.exit_code == 0, result.output
        assert json.loads(out.read_text(encoding="utf-8"))["passed"] is True


class TestVerify:
    """``flatfront verify``."""

    def test_moebius_pair_fails(self, tmp_path: Path, write_spec: Callable[..., Path]) -> None:
        spec = write_spec({"kind": "null_small", "G": "z", "g": "2*z + 1"})
        out = tmp_path / "report.json"
        result = _invoke("verify", "--spec", str(spec), "--report", str(out))
        assert result.exit_code == 1, result.output
        doc = json.loads(out.read_text(encoding="utf-8"))
        assert doc["passed"] is False
        assert [r["name"] for r in doc["records"]] == ["g-is-moebius-of-G"]

    def test_passing_spec(self, tmp_path: Path, write_spec: Callable[..., Path]) -> None:
        spec = write_spec({"kind": "null_small", "G": "z", "g": "z^2"})
        out = tmp_path / "report.json"
        result = _invoke("verify", "--spec", str(spec), "--report", str(out),
                         "--samples", "20", "--seed", "3")
        assert result.exit_code == 0, result.output
        assert json.loads(out.read_text(encoding="utf-8"))["passed"] is True

    def test_identical_gauss_maps(self, write_spec: Callable[..., Path]) -> None:
        spec = write_spec({"kind": "legendrian_gauss", "G": "z", "Gstar": "z"})
        result = _invoke("verify", "--spec", str(spec))
        assert result.exit_code == 2
        assert _error_code(result) == "G-identically-Gstar"

    def test_syntax_error(self, write_spec: Callable[..., Path]) -> None:
        spec = write_spec({"kind": "legendrian_gauss", "G": "z*(", "Gstar": "-z"})
        result = _invoke("verify", "--spec", str(spec))
        assert result.exit_code == 2
        assert _error_code(result) == "syntax-error"

    def test_invalid_spec(self, write_spec: Callable[..., Path]) -> None:
        spec = write_spec({"kind": "legendrian_gauss", "G": "z"})
        result = _invoke("verify", "--spec", str(spec))
        assert result.exit_code == 2
        assert _error_code(result) == "invalid-spec"

    def test_missing_spec_option(self) -> None:
        result = _invoke("verify")
        assert result.exit_code == 2
        assert _error_code(result) == "usage-error"


class TestSampleAndMesh:
    """``flatfront sample`` and ``flatfront mesh``."""

    def test_sample_no_points(self, write_spec: Callable[..., Path]) -> None:
        spec = write_spec({"kind": "c3_integral_free", "g": "z", "h": "z^3/6"})
        result = _invoke("sample", "--spec", str(spec))
        assert result.exit_code == 0, result.output
        assert [] in _json_lines(result)

    def test_sample_point(self, write_spec: Callable[..., Path]) -> None:
        spec = write_spec({"kind": "c3_integral_free", "g": "z", "h": "z^3/6"})
        result = _invoke("sample", "--spec", str(spec), "--point", "1,0")
        assert result.exit_code == 0, result.output
        (rows,) = [d for d in _json_lines(result) if isinstance(d, list)]
        (row,) = rows
        assert row["z"] == [1.0, 0.0]
        assert row["F"][2] == pytest.approx([0.5, 0.0])

    def test_mesh_requires_legendrian(self, tmp_path: Path,
                                      write_spec: Callable[..., Path]) -> None:
        spec = write_spec({"kind": "null_small", "G": "z", "g": "z^2"})
        result = _invoke("mesh", "--spec", str(spec), "--grid", "0.5,2,4,8",
                         "--mesh", str(tmp_path / "front.ply"))
        assert result.exit_code == 2
        assert _error_code(result) == "invalid-spec"

    def test_mesh_requires_grid(self, tmp_path: Path, write_spec: Callable[..., Path]) -> None:
        spec = write_spec({"kind": "legendrian_G_omega", "G": "z", "omega": "1/z"})
        result = _invoke("mesh", "--spec", str(spec), "--mesh", str(tmp_path / "front.ply"))
        assert result.exit_code == 2
        assert _error_code(result) == "invalid-spec"

    def test_mesh_grid_on_pole(self, tmp_path: Path, write_spec: Callable[..., Path]) -> None:
        spec = write_spec({"kind": "legendrian_G_omega", "G": "z", "omega": "1/z"})
        result = _invoke("mesh", "--spec", str(spec), "--grid", "0,1,3,8",
                         "--mesh", str(tmp_path / "front.ply"))
        assert result.exit_code == 2
        assert _error_code(result) == "grid-hits-pole"

    def test_mesh_spec(self, tmp_path: Path, write_spec: Callable[..., Path]) -> None:
        spec = write_spec({"kind": "legendrian_G_omega", "G": "z", "omega": "1/z"})
        out = tmp_path / "front.ply"
        result = _invoke("mesh", "--spec", str(spec), "--grid", "0.5,2,4,8", "--mesh", str(out))
        assert result.exit_code == 0, result.output
        assert "element face 48" in out.read_text(encoding="ascii")
