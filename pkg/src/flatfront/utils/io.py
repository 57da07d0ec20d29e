"""
io.py – Deterministic JSON serialization.

Keys are sorted, floats carry 17 significant digits, complex numbers become
``[re, im]`` pairs and non-finite floats become the strings ``"inf"``,
``"-inf"`` and ``"nan"``. Identical inputs therefore give byte-identical files.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import logging
import math
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import numpy as np

logger = logging.getLogger(__name__)


def to_jsonable(obj: Any) -> Any:
    """Convert numpy scalars/arrays, complex numbers, enums and dataclasses to JSON types."""
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, Mapping):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, Path):
        return str(obj)
    return obj


def _format_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    text = f"{x:.17g}"
    if "e" not in text and "." not in text and "n" not in text:
        text += ".0"
    return text


def _emit(obj: Any, parts: list[str]) -> None:
    if obj is None:
        parts.append("null")
    elif isinstance(obj, bool):
        parts.append("true" if obj else "false")
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(_format_float(obj))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, Mapping):
        parts.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                parts.append(", ")
            parts.append(json.dumps(str(key), ensure_ascii=False))
            parts.append(": ")
            _emit(obj[key], parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, item in enumerate(obj):
            if i:
                parts.append(", ")
            _emit(item, parts)
        parts.append("]")
    else:
        raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def dumps_stable(obj: Any) -> str:
    """Serialize ``obj`` to a single deterministic JSON line."""
    parts: list[str] = []
    _emit(to_jsonable(obj), parts)
    return "".join(parts)


def write_json(obj: Any, path: Path) -> None:
    """Write ``obj`` with ``dumps_stable`` (plus trailing newline)."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_stable(obj) + "\n", encoding="utf-8")
    logger.debug("Wrote JSON → %s", path)


def read_json(path: Path) -> Any:
    """Read a JSON file and return the parsed object."""
    with path.open("r", encoding="utf-8") as fh:
        return json.load(fh)
