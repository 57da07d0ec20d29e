"""
tests/conftest.py – Shared fixtures for all tests.
"""
import json
from pathlib import Path
from typing import Any, Callable

import numpy as np
import pytest

from flatfront.config import FrontConfig
from flatfront.config_resolver import ResolvedConfig, resolve_config
from flatfront.gallery import GalleryEntry, build_entry
from flatfront.types import RunRequest


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(0)


@pytest.fixture()
def cfg() -> ResolvedConfig:
    return resolve_config(RunRequest(samples=20, tol=1e-8, seed=0, workers=1), FrontConfig())


@pytest.fixture()
def equidistant_entry() -> GalleryEntry:
    return build_entry("equidistant", {"k": 2.0})


@pytest.fixture()
def write_spec(tmp_path: Path) -> Callable[[dict[str, Any]], Path]:
    """Factory writing a curve-spec document to a temporary file."""

    def _write(doc: dict[str, Any], name: str = "spec.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return _write
