"""
continuation.py – Analytic continuation along paths, path integrals and loop periods.

``BranchTracker`` walks a straight segment in steps short enough that no
log-type argument turns by more than ``max_arg_step``, so nearest-branch
selection stays unambiguous. Step lengths come from the distance to the zeros
and poles of those arguments; the step doubles after each accepted step.
Start and end points may be arrays, which continues many paths in lockstep.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from typing import Optional

import numpy as np

from flatfront.constants import (
    CLEARANCE_FACTOR,
    HALF_STEP_AGREEMENT,
    MAX_ARG_STEP,
    MIN_CONTINUATION_STEP,
    QUAD_ABS_TOL,
    QUAD_MAX_EVALS,
)
from flatfront.exceptions import ContinuationError, PathClearanceError, QuadratureError
from flatfront.expr.evaluate import evaluate, evaluate_many
from flatfront.expr.nodes import Expr, is_multivalued
from flatfront.expr.quadrature import integrate_segment
from flatfront.expr.rational import singular_points, winding_sources
from flatfront.types import BranchState, PathC, Scalar

logger = logging.getLogger(__name__)


# ── Clearance ─────────────────────────────────────────────────────────────────

def segment_distance(p: complex, a: complex, b: complex) -> float:
    """Euclidean distance from ``p`` to the segment [a, b]."""
    d = b - a
    if d == 0:
        return abs(p - a)
    t = ((p - a) * d.conjugate()).real / abs(d) ** 2
    t = min(max(t, 0.0), 1.0)
    return abs(p - (a + t * d))


def check_clearance(
    path: PathC, points: Sequence[complex], factor: float = CLEARANCE_FACTOR
) -> None:
    """
    Raise ``PathClearanceError`` if ``path`` passes within
    ``factor * bbox_diameter(path)`` of any of ``points``.
    """
    clearance = factor * path.bbox_diameter()
    pts = path.points()
    for p in points:
        for a, b in zip(pts[:-1], pts[1:]):
            dist = segment_distance(p, a, b)
            if dist < clearance or dist == 0:
                raise PathClearanceError(p, dist, clearance)


# ── Tracker ───────────────────────────────────────────────────────────────────

class BranchTracker:
    """
    Continues a fixed tuple of expressions jointly.

    Each step is capped so that no rational log-type argument can turn by
    more than ``max_arg_step`` over it: with ``M`` zeros and poles (counted
    with multiplicity) at distance ``d``, the step is at most
    ``max_arg_step * d / (M + max_arg_step)``. Arguments that are not
    rational get no such bound, so steps are then accepted only when they
    agree with the two half-steps.

    Parameters
    ----------
    exprs:
        Expressions whose branches are tracked together.
    max_arg_step:
        Largest accepted change in arg of any log-type argument per step.
    quad_tol:
        Quadrature target for path-integral nodes.
    """

    def __init__(
        self,
        exprs: Sequence[Expr],
        max_arg_step: float = MAX_ARG_STEP,
        quad_tol: float = QUAD_ABS_TOL,
    ) -> None:
        self.exprs = tuple(exprs)
        self.max_arg_step = max_arg_step
        self.quad_tol = quad_tol
        self.steps = 0
        self._groups: list[tuple[np.ndarray, int]] = []
        self._bounded = True
        for e in self.exprs:
            groups, complete = winding_sources(e)
            self._bounded = self._bounded and complete
            for g in groups:
                self._groups.append((np.array([p for p, _ in g], dtype=complex),
                                     sum(m for _, m in g)))

    def start(
        self, z: Scalar, branch: Optional[BranchState] = None
    ) -> tuple[list[Scalar], BranchState]:
        values, record = evaluate_many(self.exprs, z, branch, self.quad_tol)
        return values, BranchState(point=z, anchors=record)

    def reach(self, z: Scalar, delta: Scalar) -> float:
        """Largest fraction of ``delta`` that may be stepped from ``z`` in one go."""
        zz = np.atleast_1d(np.asarray(z, dtype=complex))
        length = np.broadcast_to(np.abs(np.asarray(delta, dtype=complex)), zz.shape)
        best = math.inf
        for points, order in self._groups:
            dist = np.min(np.abs(zz[..., None] - points), axis=-1)
            with np.errstate(divide="ignore", invalid="ignore"):
                h = self.max_arg_step * dist / ((order + self.max_arg_step) * length)
            h = h[length > 0]
            if h.size:
                best = min(best, float(np.min(h)))
        return best

    def _acceptable(self, old: BranchState, record: dict[str, Scalar]) -> bool:
        for key, new in record.items():
            if not np.all(np.isfinite(np.asarray(new))):
                return False
            if not key.startswith("log:") or key not in old.anchors:
                continue
            jump = np.max(np.abs(np.imag(np.asarray(new) - np.asarray(old.anchors[key]))))
            if jump > self.max_arg_step:
                return False
        return True

    def _halves_agree(self, old: BranchState, z: Scalar, record: dict[str, Scalar]) -> bool:
        mid = (np.asarray(old.point) + np.asarray(z)) / 2
        if not isinstance(z, np.ndarray):
            mid = complex(mid)
        _, first = evaluate_many(self.exprs, mid, old, self.quad_tol)
        half = BranchState(point=mid, anchors={**old.anchors, **first})
        _, second = evaluate_many(self.exprs, z, half, self.quad_tol)
        for key, value in record.items():
            other = np.asarray(second.get(key, value))
            gap = np.abs(np.asarray(value) - other)
            if np.any(gap > HALF_STEP_AGREEMENT * (1 + np.abs(other))):
                return False
        return True

    def advance(
        self,
        state: BranchState,
        target: Scalar,
        trail: Optional[list[tuple[Scalar, BranchState]]] = None,
    ) -> tuple[list[Scalar], BranchState]:
        """
        Continue from ``state.point`` to ``target`` along a straight segment.

        Every accepted intermediate point and its state is appended to ``trail``
        when one is given.

        Raises
        ------
        ContinuationError
            If the step size underflows, which happens next to a branch point.
        """
        if state.point is None:
            raise ValueError("advance() needs an anchored state; call start() first.")
        origin = state.point
        delta = np.asarray(target) - np.asarray(origin)
        if not isinstance(target, np.ndarray):
            delta = complex(delta)
        t, h = 0.0, 1.0
        cur = state
        values: list[Scalar] = []
        if np.all(np.asarray(delta) == 0):
            values, record = evaluate_many(self.exprs, target, cur, self.quad_tol)
            return values, BranchState(point=target, anchors={**cur.anchors, **record})
        while t < 1.0:
            h = min(h, 1.0 - t, self.reach(cur.point, delta))
            z = origin + (t + h) * delta
            if h < MIN_CONTINUATION_STEP:
                where = complex(np.ravel(np.asarray(z))[0])
                raise ContinuationError(where, "step size underflow")
            values, record = evaluate_many(self.exprs, z, cur, self.quad_tol)
            if self._acceptable(cur, record) and (
                self._bounded or self._halves_agree(cur, z, record)
            ):
                t += h
                cur = BranchState(point=z, anchors={**cur.anchors, **record})
                self.steps += 1
                if trail is not None:
                    trail.append((z, cur))
                h *= 2.0
            else:
                h /= 2.0
        return values, cur

    def follow(
        self, path: PathC, branch: Optional[BranchState] = None
    ) -> list[tuple[list[Scalar], BranchState]]:
        """
        Continue along every vertex of ``path``.

        When ``branch`` is anchored away from the path start, the segment from
        its point to the start is walked first.
        """
        pts = path.points()
        if branch is not None and branch.point is not None:
            values, state = self.advance(branch, pts[0])
        else:
            values, state = self.start(pts[0], branch)
        out = [(values, state)]
        for p in pts[1:]:
            values, state = self.advance(state, p)
            out.append((values, state))
        logger.debug("Continued %d expressions over %d vertices in %d steps",
                     len(self.exprs), len(pts), self.steps)
        return out


def continue_many(
    exprs: Sequence[Expr],
    path: PathC,
    branch: Optional[BranchState] = None,
    clearance_factor: float = CLEARANCE_FACTOR,
    max_arg_step: float = MAX_ARG_STEP,
) -> tuple[list[complex], BranchState]:
    """Joint continuation of several expressions; see ``continue_along``."""
    singular: list[complex] = []
    for e in exprs:
        singular.extend(singular_points(e))
    check_clearance(path, singular, clearance_factor)
    tracker = BranchTracker(exprs, max_arg_step=max_arg_step)
    values, state = tracker.follow(path, branch)[-1]
    return [complex(v) for v in values], state


def continue_along(
    e: Expr,
    path: PathC,
    branch: Optional[BranchState] = None,
    clearance_factor: float = CLEARANCE_FACTOR,
    max_arg_step: float = MAX_ARG_STEP,
) -> tuple[complex, BranchState]:
    """
    Analytically continue ``e`` along ``path``.

    Parameters
    ----------
    e:
        Expression to continue.
    path:
        Path starting where ``branch`` is anchored (or anywhere, for a principal start).
    branch:
        Starting branch; principal at the path start when omitted.
    clearance_factor:
        Required distance to known singularities, relative to the path's
        bounding-box diameter.

    Returns
    -------
    (value at the path end, BranchState there)

    Raises
    ------
    PathClearanceError
        If the path passes too close to a pole or branch point.
    """
    values, state = continue_many([e], path, branch, clearance_factor, max_arg_step)
    return values[0], state


# ── Integrals ─────────────────────────────────────────────────────────────────

def path_integral(
    form: Expr,
    path: PathC,
    branch: Optional[BranchState] = None,
    abs_tol: float = QUAD_ABS_TOL,
    max_evals: int = QUAD_MAX_EVALS,
    max_arg_step: float = MAX_ARG_STEP,
) -> tuple[complex, BranchState]:
    """
    Integral of ``form(z) dz`` along ``path``.

    Multivalued integrands are first continued along the path; every
    accepted continuation step is then integrated on its own branch.

    Returns
    -------
    (integral, BranchState of the integrand at the path end)

    Raises
    ------
    QuadratureError
        If a segment misses the tolerance or the evaluation budget is exhausted.
    """
    pts = path.points()
    if is_multivalued(form) or (branch is not None and branch.point is not None):
        nodes_with_states = _fine_states(form, path, branch, max_arg_step)
    else:
        nodes_with_states = [(p, BranchState()) for p in pts]
    per_segment_tol = abs_tol / max(len(nodes_with_states) - 1, 1)
    total = 0j
    evals = 0
    for (a, state), (b, _) in zip(nodes_with_states[:-1], nodes_with_states[1:]):
        value, n = integrate_segment(
            lambda t, s=state: complex(evaluate(form, t, s, abs_tol)),
            a, b, abs_tol=per_segment_tol,
        )
        total += value
        evals += n
        if evals > max_evals:
            raise QuadratureError(f"evaluation budget {max_evals} exhausted")
    logger.debug("Path integral over %d pieces: %d evaluations", len(nodes_with_states) - 1, evals)
    return total, nodes_with_states[-1][1]


def _fine_states(
    form: Expr, path: PathC, branch: Optional[BranchState], max_arg_step: float
) -> list[tuple[Scalar, BranchState]]:
    """Subdivide ``path`` at every accepted continuation step, keeping its state."""
    tracker = BranchTracker([form], max_arg_step=max_arg_step)
    pts = path.points()
    if branch is not None and branch.point is not None:
        _, state = tracker.advance(branch, pts[0])
    else:
        _, state = tracker.start(pts[0], branch)
    out: list[tuple[Scalar, BranchState]] = [(pts[0], state)]
    for p in pts[1:]:
        _, state = tracker.advance(state, p, trail=out)
    return out


def loop_period(
    form: Expr,
    loop: PathC,
    branch: Optional[BranchState] = None,
    abs_tol: float = QUAD_ABS_TOL,
    max_evals: int = QUAD_MAX_EVALS,
) -> complex:
    """
    Period of ``form(z) dz`` over the closed path ``loop``.

    Raises
    ------
    ValueError
        If ``loop`` is not closed.
    QuadratureError
        If the accuracy target is not met.
    """
    if not loop.closed:
        raise ValueError("loop_period requires a closed path.")
    value, _ = path_integral(form, loop, branch, abs_tol=abs_tol, max_evals=max_evals)
    return value
