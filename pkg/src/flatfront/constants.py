"""
constants.py – Immutable numerical defaults, probe points and gallery names.
"""

from __future__ import annotations

import math

# ── Tolerances ────────────────────────────────────────────────────────────────

DEFAULT_TOL: float = 1e-8
"""Default pass/fail tolerance for identity checks and matrix comparisons."""

SCHWARZIAN_TOL: float = 1e-6
"""Looser tolerance for identities that involve third derivatives."""

PERIOD_TOL: float = 1e-8
"""Absolute residual allowed when testing a loop period for membership in pi*i*Z."""

QUAD_ABS_TOL: float = 1e-10
QUAD_REL_TOL: float = 1e-12
QUAD_MAX_EVALS: int = 1_000_000

CLEARANCE_FACTOR: float = 1e-3
"""Path clearance as a fraction of the path's bounding-box diameter."""

MAX_ARG_STEP: float = math.pi / 4
"""Largest accepted change in arg of any log-type argument during one continuation step."""

MIN_CONTINUATION_STEP: float = 1e-10

SEGMENT_CACHE_SIZE: int = 4096
"""Principal path-integral segments kept per process, keyed by form, endpoint and tolerance."""

HALF_STEP_AGREEMENT: float = 1e-6
"""Relative gap allowed between a full continuation step and its two half-steps."""

ROOT_CLUSTER_TOL: float = 1e-6
"""Relative distance under which numerically computed roots are merged."""

# ── Probe points ──────────────────────────────────────────────────────────────

PROBE_POINTS: tuple[complex, ...] = (
    0.37 + 0.21j,
    1.3 - 0.4j,
    -0.8 + 0.9j,
    2.1 + 1.7j,
    -1.6 - 1.1j,
)
"""Generic points used to decide 'identically zero' and 'constant' numerically."""

BASEPOINT_CANDIDATES: tuple[complex, ...] = (
    1.0, 2.0, 1.0 + 1.0j, -1.0, 2.0j, -2.0, 1.5 - 0.5j, 3.0, -1.0 - 1.0j, 0.5j,
)

# ── Front geometry ────────────────────────────────────────────────────────────

TRUNCATE_NORM: float = 0.999
"""Ball norm at which the radial grading toward an end stops."""

SING_CLIP: float = 1e30
"""Finite stand-in for +/- infinity in the per-vertex singularity indicator."""

SEAM_TOL: float = 1e-6
"""Ball distance under which an annular seam is stitched."""

# ── Gallery / CLI ─────────────────────────────────────────────────────────────

GALLERY_NAMES: tuple[str, ...] = ("equidistant", "revolution", "dihedral", "tetrahedral")

PLY_VERTEX_PROPERTIES: tuple[str, ...] = ("x", "y", "z", "sing", "dsigma2")

EXIT_OK: int = 0
EXIT_VERIFICATION_FAILED: int = 1
EXIT_INVALID_SPEC: int = 2
EXIT_NUMERICAL_FAILURE: int = 3
