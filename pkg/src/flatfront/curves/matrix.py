"""
matrix.py – 2x2 matrices of expressions and numerical probing helpers.

An ``ExprMatrix`` holds the entry expressions of a curve ``F`` or ``E`` in
PSL(2,C). Entries may share an overall factor (a square root, typically);
``entries()`` always returns the effective entries with that factor applied.

Curves are only defined up to sign, so evaluation results are compared with
``psl_distance``. All four entries are evaluated in one pass so that shared
multivalued subterms sit on the same branch.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from flatfront.constants import CLEARANCE_FACTOR, MAX_ARG_STEP, PROBE_POINTS
from flatfront.exceptions import BranchPointError, PoleError
from flatfront.expr import nodes
from flatfront.expr.continuation import continue_many
from flatfront.expr.diff import differentiate
from flatfront.expr.evaluate import evaluate_many
from flatfront.expr.nodes import Expr
from flatfront.psl2 import Mat2C
from flatfront.types import BranchState, MatrixKind, PathC

logger = logging.getLogger(__name__)

# Relative size below which a probed value counts as zero.
IDENTICALLY_ZERO_TOL = 1e-10


# ── Probing ───────────────────────────────────────────────────────────────────

def probe(
    exprs: Sequence[Expr], points: Sequence[complex] = PROBE_POINTS
) -> list[list[complex]]:
    """
    Principal values of ``exprs`` at every probe point where all of them are defined.

    Points that hit a pole or branch point are skipped.
    """
    rows: list[list[complex]] = []
    for p in points:
        try:
            values, _ = evaluate_many(exprs, p)
        except (PoleError, BranchPointError):
            continue
        if all(np.isfinite(v) for v in values):
            rows.append([complex(v) for v in values])
    return rows


def is_identically_zero(e: Expr, scale: Optional[Sequence[Expr]] = None) -> bool:
    """
    Numerically decide whether ``e`` vanishes identically.

    Parameters
    ----------
    e:
        Expression to test.
    scale:
        Expressions whose magnitudes set the scale; the value of ``e`` counts
        as zero below ``IDENTICALLY_ZERO_TOL * (1 + max |scale|)``.
    """
    if isinstance(e, nodes.Const):
        return e.value == 0
    rows = probe([e, *(scale or ())])
    if not rows:
        return False
    for row in rows:
        size = 1.0 + max((abs(v) for v in row[1:]), default=0.0)
        if abs(row[0]) > IDENTICALLY_ZERO_TOL * size:
            return False
    return True


def is_constant(e: Expr) -> bool:
    """True when the derivative of ``e`` vanishes at every probe point."""
    if not nodes.depends_on_z(e):
        return True
    return is_identically_zero(differentiate(e), scale=[e])


# ── Matrices of expressions ───────────────────────────────────────────────────

@dataclass(frozen=True)
class ExprMatrix:
    """
    Matrix ``factor * [[A, B], [C, D]]`` of meromorphic expressions.

    Attributes
    ----------
    A, B, C, D:
        Entry expressions before the shared factor is applied.
    shared_factor:
        Optional common factor of all four entries.
    kind:
        Which defining identity the matrix is expected to satisfy.
    """

    A: Expr
    B: Expr
    C: Expr
    D: Expr
    shared_factor: Optional[Expr] = None
    kind: MatrixKind = MatrixKind.PLAIN

    def entries(self) -> tuple[Expr, Expr, Expr, Expr]:
        """Effective entries (shared factor applied), row-major."""
        return self._effective

    @cached_property
    def _effective(self) -> tuple[Expr, Expr, Expr, Expr]:
        raw = (self.A, self.B, self.C, self.D)
        if self.shared_factor is None:
            return raw
        f = self.shared_factor
        return tuple(nodes.mul(f, x) for x in raw)  # type: ignore[return-value]

    def derivative(self) -> "ExprMatrix":
        """Entrywise d/dz of the effective entries."""
        a, b, c, d = (differentiate(x) for x in self.entries())
        return ExprMatrix(a, b, c, d)

    def determinant(self) -> Expr:
        a, b, c, d = self.entries()
        return nodes.sub(nodes.mul(a, d), nodes.mul(b, c))

    def evaluate(self, z: complex, branch: Optional[BranchState] = None) -> Mat2C:
        """Numeric matrix at ``z`` (principal branches unless ``branch`` is given)."""
        values, _ = evaluate_many(self.entries(), z, branch)
        return Mat2C(*(complex(v) for v in values))

    def evaluate_array(
        self, z: np.ndarray, branch: Optional[BranchState] = None
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Entry arrays at every point of ``z``."""
        values, _ = evaluate_many(self.entries(), np.asarray(z, dtype=complex), branch)
        return values[0], values[1], values[2], values[3]

    def continue_along(
        self,
        path: PathC,
        branch: Optional[BranchState] = None,
        clearance_factor: float = CLEARANCE_FACTOR,
        max_arg_step: float = MAX_ARG_STEP,
    ) -> tuple[Mat2C, BranchState]:
        """Matrix at the end of ``path`` after continuing all entries jointly."""
        values, state = continue_many(
            self.entries(), path, branch, clearance_factor, max_arg_step
        )
        return Mat2C(*values), state
