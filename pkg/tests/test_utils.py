"""
test_utils.py – Unit tests for stable JSON, fingerprints, logging and sampling helpers.
"""

from __future__ import annotations

import json
import logging
import sys
from collections.abc import Iterator

import numpy as np
import pytest

from flatfront.exceptions import GridError
from flatfront.expr.continuation import segment_distance
from flatfront.utils.hashing import short, spec_fingerprint
from flatfront.utils.io import dumps_stable
from flatfront.utils.logging import _JsonFormatter, configure_logging, get_logger, parse_level
from flatfront.utils.sampling import route, sample_points


class TestStableJson:
    """Deterministic serialization."""

    def test_complex_and_non_finite(self) -> None:
        text = dumps_stable({"b": 1 + 2j, "a": [float("inf"), float("nan"), 1.0]})
        assert text == '{"a": ["inf", "nan", 1.0], "b": [1.0, 2.0]}'

    def test_numpy_values(self) -> None:
        doc = json.loads(dumps_stable({"x": np.array([1.5, 2.0]), "n": np.int64(3)}))
        assert doc == {"x": [1.5, 2.0], "n": 3}


class TestFingerprint:
    """Spec fingerprints."""

    def test_settings_change_fingerprint(self) -> None:
        spec = {"kind": "null_small", "G": "z", "g": "z^2"}
        base = spec_fingerprint(spec, seed=0, samples=20, tol=1e-8)
        assert base == spec_fingerprint(dict(spec), seed=0, samples=20, tol=1e-8)
        assert base != spec_fingerprint(spec, seed=1, samples=20, tol=1e-8)
        assert base != spec_fingerprint(spec, seed=0, samples=20, tol=1e-6)
        assert short(base) == base[:12]


class TestLogging:
    """Logger configuration."""

    @pytest.fixture(autouse=True)
    def _reset(self) -> Iterator[None]:
        yield
        logging.getLogger("flatfront").handlers.clear()

    def test_levels(self) -> None:
        assert parse_level("DEBUG") == logging.DEBUG
        assert parse_level(" error ") == logging.ERROR
        assert parse_level("loud") == logging.INFO

    def test_single_handler(self) -> None:
        configure_logging("debug")
        configure_logging("error")
        root = logging.getLogger("flatfront")
        assert len(root.handlers) == 1
        assert root.level == logging.ERROR

    def test_namespace(self) -> None:
        assert get_logger("flatfront.gallery").name == "flatfront.gallery"
        assert get_logger("scripts.run").name == "flatfront.scripts.run"

    def test_json_line_carries_code(self) -> None:
        try:
            raise GridError(0j)
        except GridError:
            record = logging.LogRecord("flatfront.mesh", logging.ERROR, __file__, 1,
                                       "meshing failed", None, None)
            record.exc_info = sys.exc_info()
        doc = json.loads(_JsonFormatter().format(record))
        assert doc["code"] == "grid-hits-pole"
        assert doc["level"] == "error"
        assert doc["msg"] == "meshing failed"


class TestSampling:
    """Seeded points and routes."""

    def test_points_are_reproducible(self) -> None:
        a = sample_points(np.random.default_rng(4), 30, avoid=[1.0])
        b = sample_points(np.random.default_rng(4), 30, avoid=[1.0])
        assert np.array_equal(a, b)
        assert np.all(np.abs(a - 1.0) >= 0.15)
        assert np.all((np.abs(a) >= 0.3) & (np.abs(a) <= 2.5))

    def test_route_avoids_points(self) -> None:
        path = route(2.0, -2.0, avoid=[0j])
        assert path.start == 2.0 and path.end == -2.0
        vertices = path.points()
        assert all(segment_distance(0j, a, b) >= 0.05 - 1e-12
                   for a, b in zip(vertices, vertices[1:]))

    def test_route_needs_distinct_ends(self) -> None:
        with pytest.raises(ValueError):
            route(1.0, 1.0)
