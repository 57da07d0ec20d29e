"""
outputs.py – Assembles and writes meshes, reports and sample rows.

Meshes are written as ASCII PLY 1.0 with per-vertex ``x y z sing dsigma2``
floats and triangular faces; reports and sample rows go through the stable
JSON writer so identical inputs give byte-identical files.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np

from flatfront.config_resolver import ResolvedConfig
from flatfront.constants import PLY_VERTEX_PROPERTIES
from flatfront.curves.c3_null import weierstrass_at
from flatfront.curves.null_curve import gauss_from_null, small_null
from flatfront.data.schema import BuiltCurve
from flatfront.data.validation import VerificationReport
from flatfront.front.flat_front import sample_front
from flatfront.psl2 import Mat2C
from flatfront.types import FrontMesh
from flatfront.utils.io import write_json

logger = logging.getLogger(__name__)


def _format_float(x: float) -> str:
    return f"{float(x):.9g}"


def ply_text(mesh: FrontMesh) -> str:
    """
    PLY document for ``mesh``.

    Floats carry 9 significant digits, enough to round-trip float32 readers.
    """
    columns = [mesh.vertices[:, 0], mesh.vertices[:, 1], mesh.vertices[:, 2],
               mesh.sing, mesh.dsigma2]
    lines = [
        "ply",
        "format ascii 1.0",
        "comment flatfront front in the Poincare ball",
        f"element vertex {mesh.n_vertices}",
        *(f"property float {name}" for name in PLY_VERTEX_PROPERTIES),
        f"element face {mesh.n_faces}",
        "property list uchar int vertex_indices",
        "end_header",
    ]
    for i in range(mesh.n_vertices):
        lines.append(" ".join(_format_float(col[i]) for col in columns))
    for a, b, c in mesh.faces:
        lines.append(f"3 {int(a)} {int(b)} {int(c)}")
    return "\n".join(lines) + "\n"


def write_ply(mesh: FrontMesh, path: Path) -> Path:
    """
    Write ``mesh`` to ``path`` as ASCII PLY.

    Raises
    ------
    ValueError
        If a vertex or scalar is not finite.
    """
    if not (np.all(np.isfinite(mesh.vertices)) and np.all(np.isfinite(mesh.sing))
            and np.all(np.isfinite(mesh.dsigma2))):
        raise ValueError("Mesh contains non-finite values.")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(ply_text(mesh), encoding="ascii")
    logger.info("Wrote mesh: %d vertices, %d faces → %s", mesh.n_vertices, mesh.n_faces, path)
    return path


def write_report(report: VerificationReport, path: Path) -> Path:
    write_json(report.to_dict(), path)
    logger.info("Wrote report for %s → %s", report.subject, path)
    return path


# ── Sample rows ───────────────────────────────────────────────────────────────

def _matrix_rows(m: Mat2C) -> list[list[complex]]:
    return [[m.a, m.b], [m.c, m.d]]


def sample_rows(built: BuiltCurve, points: Sequence[complex], cfg: ResolvedConfig) -> list[dict[str, Any]]:
    """
    One row of curve (and front) data per point, in the order given.

    Legendrian kinds are continued from the base point along a route around the
    singular set, so every row sits on the branch reached from the base point.

    Raises
    ------
    PoleError, BranchPointError
        If a point is singular; the error names the point.
    """
    rows: list[dict[str, Any]] = []
    if built.legendrian is not None:
        E = built.legendrian
        router = built.entry.route_to if built.entry is not None else E.route_to
        for z in points:
            s = sample_front(E, z, path=router(z), clearance_factor=cfg.clearance_factor)
            rows.append({
                "z": s.z,
                "ball": list(s.ball),
                "hermitian": _matrix_rows(s.point.x),
                "omega": s.omega_val,
                "theta": s.theta_val,
                "ds2": list(s.ds2),
                "dsigma2": s.dsigma2,
                "sing": s.sing,
            })
    elif built.null_data is not None:
        F = small_null(built.null_data)
        for z in points:
            G, g = gauss_from_null(F, z)
            rows.append({"z": complex(z), "F": _matrix_rows(F.evaluate(z)), "G": G, "g": g})
    elif built.weierstrass is not None:
        for z in points:
            rows.append({"z": complex(z), "F": list(weierstrass_at(built.weierstrass, z))})
    else:
        assert built.c3 is not None
        for z in points:
            rows.append({"z": complex(z), "F": list(built.c3.at(z))})
    logger.debug("Sampled %d point(s) of %s", len(rows), built.spec.label())
    return rows
