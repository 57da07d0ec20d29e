"""
mesh.py – Triangulated flat fronts sampled over annular and rectangular grids.

Every vertex is reached by analytic continuation from the curve's base point,
so curves that only live on a covering of their domain are lifted consistently:
the first ring (or row) is walked vertex by vertex, and each further ring is
reached from the previous one along radial segments, all vertices at once.

An annular patch is stitched at its seam only when the continued seam column
projects onto the first column; otherwise the seam is left open.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Union

import numpy as np
from tqdm import tqdm

from flatfront.constants import MAX_ARG_STEP, SEAM_TOL, TRUNCATE_NORM
from flatfront.curves.legendrian import LegendrianCurve
from flatfront.exceptions import BranchPointError, GridError, PoleError
from flatfront.expr.continuation import BranchTracker
from flatfront.expr.rational import singular_points
from flatfront.front.flat_front import ball_coordinates, singularity_array
from flatfront.types import (
    AnnularGrid,
    BranchState,
    EndSide,
    FrontMesh,
    Grid,
    RectGrid,
)
from flatfront.utils.sampling import route

logger = logging.getLogger(__name__)

# Ball norm treated as having reached the ideal boundary in floating point.
_SATURATED_NORM = 1.0 - 1e-12
_VERTEX_TOL = 1e-9


class _Lifter:
    """Continues the entries and canonical forms of one curve over a patch."""

    def __init__(self, E: LegendrianCurve, max_arg_step: float) -> None:
        omega, theta = E.forms
        self.exprs = (*E.entries(), omega, theta)
        self.tracker = BranchTracker(self.exprs, max_arg_step=max_arg_step)
        found = list(E.singular_set)
        for e in (omega, theta):
            for p in singular_points(e):
                if not any(abs(p - q) <= _VERTEX_TOL * (1 + abs(p)) for q in found):
                    found.append(p)
        self.singular = found
        self.basepoint = E.basepoint

    def check_vertices(self, vertices: np.ndarray) -> None:
        for p in self.singular:
            if np.any(np.abs(vertices - p) <= _VERTEX_TOL * (1 + abs(p))):
                raise GridError(p)

    def walk(self, points: np.ndarray) -> tuple[list[np.ndarray], BranchState, BranchState]:
        """
        Values at ``points`` walked one after another from the base point.

        Returns the value arrays, the stacked state and the state at ``points[0]``.
        """
        first = complex(points[0])
        if first == self.basepoint:
            values, state = self.tracker.start(first)
        else:
            path = route(self.basepoint, first, self.singular)
            values, state = self.tracker.follow(path)[-1]
        first_state = state
        rows = [values]
        states = [state]
        for p in points[1:]:
            values, state = self.tracker.advance(state, complex(p))
            rows.append(values)
            states.append(state)
        columns = [np.array([row[k] for row in rows], dtype=complex)
                   for k in range(len(self.exprs))]
        return columns, _stack_states(states), first_state

    def advance(self, state: BranchState, targets: np.ndarray) -> tuple[list[np.ndarray], BranchState]:
        values, new_state = self.tracker.advance(state, targets)
        return [np.asarray(v, dtype=complex) for v in values], new_state

    def point(self, state: BranchState, target: complex) -> list[complex]:
        values, _ = self.tracker.advance(state, target)
        return [complex(v) for v in values]


def _stack_states(states: Sequence[BranchState]) -> BranchState:
    keys = set(states[0].anchors)
    for s in states[1:]:
        keys &= set(s.anchors)
    return BranchState(
        point=np.array([complex(s.point) for s in states], dtype=complex),
        anchors={k: np.array([complex(s.anchors[k]) for s in states]) for k in keys},
    )


def _scalars(values: Sequence[np.ndarray]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    a, b, c, d, w, t = values
    ball = ball_coordinates(a, b, c, d)
    dsigma2 = np.abs(w) ** 2 - np.abs(t) ** 2
    return ball, singularity_array(w, t), dsigma2


def _quad_faces(n_rows: int, n_cols: int, wrap: bool) -> np.ndarray:
    faces = []
    last = n_cols if wrap else n_cols - 1
    for i in range(n_rows - 1):
        for j in range(last):
            j1 = (j + 1) % n_cols
            p, q = i * n_cols + j, i * n_cols + j1
            r, s = (i + 1) * n_cols + j1, (i + 1) * n_cols + j
            faces.append((p, q, r))
            faces.append((p, r, s))
    return np.array(faces, dtype=np.int64).reshape(-1, 3)


# ── Patches ───────────────────────────────────────────────────────────────────

def _mesh_annulus(
    lifter: _Lifter, grid: AnnularGrid, truncate_norm: float
) -> FrontMesh:
    radii = [float(r) for r in grid.radii() if r > 0]
    angles = np.append(grid.angles(), grid.angles()[0] + 2 * math.pi)

    def ring(r: float) -> np.ndarray:
        return grid.center + r * np.exp(1j * angles)

    all_vertices = np.concatenate([ring(r) for r in radii])
    lifter.check_vertices(all_vertices)
    if grid.rmin == 0:
        lifter.check_vertices(np.array([grid.center]))

    values, state, first_state = lifter.walk(ring(radii[0]))
    rings = [(radii[0], values)]
    innermost_state = first_state
    for r in radii[1:]:
        if grid.end is not EndSide.NONE:
            norms = np.linalg.norm(_scalars(rings[-1][1])[0], axis=1)
            if norms.min() > truncate_norm:
                break
        values, state = lifter.advance(state, ring(r))
        if np.linalg.norm(_scalars(values)[0], axis=1).max() >= _SATURATED_NORM:
            logger.debug("Ring r=%.3e reaches the ideal boundary; stopping", r)
            break
        rings.append((r, values))
        if r < radii[0]:
            innermost_state = state.take(0)

    balls, sings, dsig, params = [], [], [], []
    for r, vals in rings:
        ball, sing, ds = _scalars(vals)
        balls.append(ball)
        sings.append(sing)
        dsig.append(ds)
        params.append(ring(r))

    seam_gap = max(float(np.linalg.norm(b[-1] - b[0])) for b in balls)
    wrap = seam_gap < SEAM_TOL
    if not wrap:
        logger.warning("Seam of patch around %s does not close (gap %.2e); left open",
                       grid.center, seam_gap)
    keep = slice(0, grid.ntheta) if wrap else slice(None)
    n_cols = grid.ntheta if wrap else grid.ntheta + 1

    # Rings were walked in radius order away from the non-end side; store them by radius.
    order = np.argsort([r for r, _ in rings])
    vertices = np.vstack([balls[i][keep] for i in order])
    sing = np.concatenate([sings[i][keep] for i in order])
    dsigma2 = np.concatenate([dsig[i][keep] for i in order])
    z = np.concatenate([params[i][keep] for i in order])
    faces = _quad_faces(len(rings), n_cols, wrap)

    if grid.rmin == 0:
        c_vals = lifter.point(innermost_state, grid.center)
        c_ball, c_sing, c_ds = _scalars([np.array([v]) for v in c_vals])
        center_index = vertices.shape[0]
        fan = [(center_index, j, (j + 1) % n_cols)
               for j in range(n_cols if wrap else n_cols - 1)]
        vertices = np.vstack([vertices, c_ball])
        sing = np.concatenate([sing, c_sing])
        dsigma2 = np.concatenate([dsigma2, c_ds])
        z = np.append(z, grid.center)
        faces = np.vstack([faces, np.array(fan, dtype=np.int64)])

    return FrontMesh(vertices=vertices, faces=faces, sing=sing, dsigma2=dsigma2, params=z)


def _mesh_rect(lifter: _Lifter, grid: RectGrid) -> FrontMesh:
    xs = np.linspace(grid.x0, grid.x1, grid.nx)
    ys = np.linspace(grid.y0, grid.y1, grid.ny)
    lifter.check_vertices((xs[None, :] + 1j * ys[:, None]).ravel())

    values, state, _ = lifter.walk(xs + 1j * ys[0])
    rows = [values]
    for y in ys[1:]:
        values, state = lifter.advance(state, xs + 1j * y)
        rows.append(values)

    parts = [_scalars(v) for v in rows]
    return FrontMesh(
        vertices=np.vstack([p[0] for p in parts]),
        faces=_quad_faces(grid.ny, grid.nx, wrap=False),
        sing=np.concatenate([p[1] for p in parts]),
        dsigma2=np.concatenate([p[2] for p in parts]),
        params=np.concatenate([xs + 1j * y for y in ys]),
    )


def _mesh_patch(
    E: LegendrianCurve, grid: Grid, truncate_norm: float, max_arg_step: float
) -> FrontMesh:
    lifter = _Lifter(E, max_arg_step)
    try:
        if isinstance(grid, AnnularGrid):
            return _mesh_annulus(lifter, grid, truncate_norm)
        return _mesh_rect(lifter, grid)
    except (PoleError, BranchPointError) as exc:
        raise GridError(exc.point) from exc


def sample_mesh(
    E: LegendrianCurve,
    grids: Union[Grid, Sequence[Grid]],
    truncate_norm: float = TRUNCATE_NORM,
    max_arg_step: float = MAX_ARG_STEP,
    workers: int = 1,
    progress: Optional[bool] = False,
) -> FrontMesh:
    """
    Mesh the front of ``E`` over one grid or a sequence of patches.

    Parameters
    ----------
    E:
        Legendrian curve; continuation starts at its base point.
    grids:
        Patches, meshed independently and concatenated in order.
    truncate_norm:
        Walking toward an end stops after the first ring entirely beyond this ball norm.
    workers:
        Patches sampled concurrently.
    progress:
        Show a progress bar over patches.

    Raises
    ------
    GridError
        If a vertex coincides with a pole or branch point.
    ContinuationError
        If continuation stalls.
    """
    patches = [grids] if isinstance(grids, (AnnularGrid, RectGrid)) else list(grids)
    if not patches:
        raise ValueError("At least one grid is required.")

    def run(grid: Grid) -> FrontMesh:
        return _mesh_patch(E, grid, truncate_norm, max_arg_step)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        meshes = list(tqdm(pool.map(run, patches), total=len(patches),
                           disable=not progress, desc="patches"))

    mesh = FrontMesh.concatenate(meshes)
    if not np.all(np.isfinite(mesh.vertices)):
        logger.warning("Mesh has non-finite vertices")
    logger.info("Meshed %d patch(es): %d vertices, %d faces",
                len(patches), mesh.n_vertices, mesh.n_faces)
    return mesh
