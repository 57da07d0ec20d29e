"""
flat_front.py – Flat fronts f = E E* in hyperbolic 3-space.

Points of H^3 are positive-definite hermitian matrices of determinant one.
``to_poincare`` sends ``[[x0 + x3, x1 + i x2], [x1 - i x2, x0 - x3]]`` to the
ball point ``(x1, x2, x3) / (1 + x0)``.

With canonical forms ``omega`` and ``theta`` the first fundamental form is
``(omega + conj(theta)) (conj(omega) + theta)`` and the front is singular
where ``|omega| = |theta|``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from flatfront.constants import CLEARANCE_FACTOR, SING_CLIP
from flatfront.curves.legendrian import LegendrianCurve
from flatfront.exceptions import FrontBranchPointError
from flatfront.expr.continuation import continue_many
from flatfront.expr.evaluate import evaluate_many
from flatfront.psl2 import Mat2C
from flatfront.types import BranchState, PathC

logger = logging.getLogger(__name__)

_HERMITIAN_TOL = 1e-9


@dataclass(frozen=True)
class HermitianPoint:
    """
    Point of H^3 as a hermitian matrix ``x = a a*``.

    Attributes
    ----------
    x:
        Hermitian, determinant one, positive trace.
    """

    x: Mat2C

    def __post_init__(self) -> None:
        x = self.x
        scale = 1.0 + x.frobenius()
        if (x - x.dagger()).frobenius() > _HERMITIAN_TOL * scale:
            raise ValueError("Matrix is not hermitian.")
        if x.trace().real <= 0:
            raise ValueError("Matrix is not positive definite.")

    def minkowski(self) -> tuple[float, float, float, float]:
        """Hyperboloid coordinates ``(x0, x1, x2, x3)``."""
        x = self.x
        x0 = (x.a.real + x.d.real) / 2
        x3 = (x.a.real - x.d.real) / 2
        return x0, x.b.real, x.b.imag, x3


def project_matrix(m: Mat2C) -> HermitianPoint:
    """``m m*``; unchanged when ``m`` is replaced by ``-m`` or right-multiplied by a unitary."""
    return HermitianPoint(m @ m.dagger())


def project(
    E: LegendrianCurve,
    z: complex,
    branch: Optional[BranchState] = None,
    path: Optional[PathC] = None,
) -> HermitianPoint:
    """
    ``E E*`` at ``z``.

    Raises
    ------
    PoleError
        If ``z`` is a pole of ``E``.
    """
    return project_matrix(E.at(z, path, branch))


def apply_isometry(a: Mat2C, x: HermitianPoint) -> HermitianPoint:
    """Isometric action ``x -> a x a*`` of SL(2,C) on H^3."""
    return HermitianPoint(a @ x.x @ a.dagger())


def to_poincare(x: HermitianPoint) -> tuple[float, float, float]:
    """Poincare-ball coordinates of ``x``; the result has norm < 1."""
    x0, x1, x2, x3 = x.minkowski()
    s = 1.0 + x0
    return x1 / s, x2 / s, x3 / s


def ball_coordinates(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Vectorized ``to_poincare(project(E))`` from entry arrays; returns shape (N, 3)."""
    x11 = np.abs(a) ** 2 + np.abs(b) ** 2
    x22 = np.abs(c) ** 2 + np.abs(d) ** 2
    x12 = a * np.conj(c) + b * np.conj(d)
    x0 = (x11 + x22) / 2
    x3 = (x11 - x22) / 2
    s = 1.0 + x0
    return np.stack([x12.real / s, x12.imag / s, x3 / s], axis=-1)


def hyperbolic_distance(x: HermitianPoint, y: HermitianPoint) -> float:
    """``arccosh(tr(x y^{-1}) / 2)``."""
    c = (x.x @ y.x.inverse()).trace().real / 2
    return float(math.acosh(max(c, 1.0)))


# ── Fundamental forms ─────────────────────────────────────────────────────────

def fundamental_forms(
    omega_val: complex, theta_val: complex
) -> tuple[tuple[float, float, float], float]:
    """
    Coefficients of ``ds^2 = E dx^2 + 2 F dx dy + G dy^2`` and the value of ``dsigma^2``.

    Returns
    -------
    ((E, F, G), |omega|^2 - |theta|^2)
    """
    q = omega_val * theta_val
    s = abs(omega_val) ** 2 + abs(theta_val) ** 2
    ds2 = (s + 2 * q.real, -2 * q.imag, s - 2 * q.real)
    return ds2, abs(omega_val) ** 2 - abs(theta_val) ** 2


def singularity_indicator(omega_val: complex, theta_val: complex) -> float:
    """
    ``log(|omega| / |theta|)``; its zero set is the singular set of the front.

    Raises
    ------
    FrontBranchPointError
        If both forms vanish (a branch point).
    """
    w, t = abs(omega_val), abs(theta_val)
    if w == 0 and t == 0:
        raise FrontBranchPointError()
    if t == 0:
        return math.inf
    if w == 0:
        return -math.inf
    return math.log(w / t)


def singularity_array(omega: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Vectorized indicator clipped to ``+-SING_CLIP``; branch points give 0."""
    w, t = np.abs(omega), np.abs(theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        sing = np.log(w) - np.log(t)
    both = (w == 0) & (t == 0)
    if np.any(both):
        logger.warning("%d branch point(s) of the front in the sample", int(both.sum()))
    sing = np.where(both, 0.0, sing)
    return np.clip(np.nan_to_num(sing, nan=0.0, posinf=SING_CLIP, neginf=-SING_CLIP),
                   -SING_CLIP, SING_CLIP)


# ── Samples ───────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class FrontSample:
    """
    Everything the front carries at one parameter value.

    Attributes
    ----------
    z:
        Parameter.
    point:
        ``E E*`` at ``z``.
    ball:
        Poincare-ball coordinates of ``point``.
    omega_val, theta_val:
        Canonical form coefficients on the branch of ``E`` used.
    ds2:
        ``(E, F, G)`` of the first fundamental form.
    dsigma2:
        ``|omega|^2 - |theta|^2``.
    sing:
        Singularity indicator; None at a branch point.
    """

    z: complex
    point: HermitianPoint
    ball: tuple[float, float, float]
    omega_val: complex
    theta_val: complex
    ds2: tuple[float, float, float]
    dsigma2: float
    sing: Optional[float]


def sample_front(
    E: LegendrianCurve,
    z: complex,
    branch: Optional[BranchState] = None,
    path: Optional[PathC] = None,
    clearance_factor: float = CLEARANCE_FACTOR,
) -> FrontSample:
    """
    Front data at ``z``, with the entries of ``E`` and its forms on one branch.

    Without a path, principal branches are used; otherwise all quantities are
    continued along ``path`` jointly.
    """
    omega, theta = E.forms
    exprs = [*E.entries(), omega, theta]
    if path is None:
        values, _ = evaluate_many(exprs, z, branch)
    else:
        values, _ = continue_many(exprs, path, branch, clearance_factor)
    a, b, c, d, w, t = (complex(v) for v in values)
    point = project_matrix(Mat2C(a, b, c, d))
    ds2, dsigma2 = fundamental_forms(w, t)
    try:
        sing: Optional[float] = singularity_indicator(w, t)
    except FrontBranchPointError:
        logger.info("Branch point of the front at z=%s", z)
        sing = None
    return FrontSample(
        z=complex(z),
        point=point,
        ball=to_poincare(point),
        omega_val=w,
        theta_val=t,
        ds2=ds2,
        dsigma2=dsigma2,
        sing=sing,
    )
