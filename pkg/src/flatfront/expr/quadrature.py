"""
quadrature.py – Adaptive Gauss–Kronrod integration of complex functions along segments.

Wraps ``scipy.integrate.quad_vec`` so the real and imaginary parts are resolved
together with one error estimate. Evaluation counts are returned so callers can
enforce a budget over a whole path.
"""

from __future__ import annotations

import logging
from collections.abc import Callable

import numpy as np
from scipy.integrate import quad_vec

from flatfront.constants import QUAD_ABS_TOL, QUAD_REL_TOL
from flatfront.exceptions import QuadratureError

logger = logging.getLogger(__name__)


def integrate_segment(
    fn: Callable[[complex], complex],
    a: complex,
    b: complex,
    abs_tol: float = QUAD_ABS_TOL,
    rel_tol: float = QUAD_REL_TOL,
    limit: int = 2000,
) -> tuple[complex, int]:
    """
    Integrate ``fn(z) dz`` along the straight segment from ``a`` to ``b``.

    Parameters
    ----------
    fn:
        Scalar complex integrand.
    a, b:
        Segment end points.
    abs_tol, rel_tol:
        Error targets passed to the integrator.
    limit:
        Maximum number of subintervals.

    Returns
    -------
    (integral, number of integrand evaluations)

    Raises
    ------
    QuadratureError
        If the integrator reports failure or a non-finite result.
    """
    if a == b:
        return 0j, 0
    delta = b - a

    def integrand(t: float) -> np.ndarray:
        v = complex(fn(a + t * delta)) * delta
        return np.array([v.real, v.imag])

    res, err, info = quad_vec(
        integrand, 0.0, 1.0, epsabs=abs_tol, epsrel=rel_tol, norm="max",
        limit=limit, full_output=True,
    )
    if not info.success or not np.all(np.isfinite(res)):
        raise QuadratureError(
            f"segment {a} → {b}: {getattr(info, 'message', 'no convergence')}", float(err)
        )
    logger.debug("Segment %s → %s: %d evaluations, error %.2e", a, b, info.neval, err)
    return complex(res[0], res[1]), int(info.neval)
