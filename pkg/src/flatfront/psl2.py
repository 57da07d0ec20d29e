"""
psl2.py – Numeric 2x2 complex matrices, the PSL(2,C) quotient and Moebius actions.

``Mat2C`` is a value type; equality in PSL(2,C) is tested with ``psl_distance``,
which identifies a matrix with its negative. The point at infinity of CP^1 is the
complex value ``INFINITY`` and is handled projectively by ``moebius_apply``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

INFINITY: complex = complex(math.inf, 0.0)


def is_infinite(w: complex) -> bool:
    """True when ``w`` represents the point at infinity."""
    return cmath.isinf(w)


@dataclass(frozen=True)
class Mat2C:
    """
    Row-major 2x2 complex matrix ``[[a, b], [c, d]]``.

    Attributes
    ----------
    a, b, c, d:
        Matrix entries.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def identity(cls) -> "Mat2C":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def diag(cls, x: complex, y: complex) -> "Mat2C":
        return cls(x, 0.0, 0.0, y)

    @classmethod
    def from_array(cls, m: np.ndarray) -> "Mat2C":
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2C":
        det = self.det()
        if det == 0:
            raise ZeroDivisionError("Singular matrix has no inverse.")
        return Mat2C(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def dagger(self) -> "Mat2C":
        """Conjugate transpose."""
        return Mat2C(
            self.a.conjugate(), self.c.conjugate(), self.b.conjugate(), self.d.conjugate()
        )

    def trace(self) -> complex:
        return self.a + self.d

    def frobenius(self) -> float:
        return math.sqrt(abs(self.a) ** 2 + abs(self.b) ** 2 + abs(self.c) ** 2 + abs(self.d) ** 2)

    def scaled(self, s: complex) -> "Mat2C":
        return Mat2C(self.a * s, self.b * s, self.c * s, self.d * s)

    def is_unimodular(self, tol: float = 1e-8) -> bool:
        return abs(self.det() - 1.0) < tol

    def __matmul__(self, other: "Mat2C") -> "Mat2C":
        return Mat2C(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __add__(self, other: "Mat2C") -> "Mat2C":
        return Mat2C(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Mat2C") -> "Mat2C":
        return Mat2C(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> "Mat2C":
        return Mat2C(-self.a, -self.b, -self.c, -self.d)


# ── PSL(2,C) comparisons ──────────────────────────────────────────────────────

def psl_distance(x: Mat2C, y: Mat2C) -> float:
    """
    Distance between the classes of ``x`` and ``y`` in SL(2,C)/{+-id}.

    Returns
    -------
    min(||x - y||_F, ||x + y||_F)
    """
    return min((x - y).frobenius(), (x + y).frobenius())


def is_unitary(x: Mat2C, tol: float = 1e-8) -> bool:
    """True iff ||x x* - id||_F < tol."""
    return (x @ x.dagger() - Mat2C.identity()).frobenius() < tol


# ── Moebius action ────────────────────────────────────────────────────────────

def moebius_apply(x: Mat2C, w: complex) -> complex:
    """
    Apply ``w -> (a w + b) / (c w + d)`` on the Riemann sphere.

    Infinity is accepted and returned as ``INFINITY``; the action is total.
    """
    if is_infinite(w):
        return INFINITY if x.c == 0 else x.a / x.c
    num = x.a * w + x.b
    den = x.c * w + x.d
    if den == 0:
        return INFINITY
    return num / den


def normalize_unimodular(x: Mat2C) -> Mat2C:
    """Rescale an invertible matrix to determinant one (principal square root)."""
    return x.scaled(1.0 / cmath.sqrt(x.det()))


# ── Seeded random elements ────────────────────────────────────────────────────

def random_unimodular(rng: np.random.Generator, scale: float = 1.0) -> Mat2C:
    """Random element of SL(2,C) with Gaussian entries before normalization."""
    while True:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        x = Mat2C.from_array(scale * m)
        if abs(x.det()) > 1e-3:
            return normalize_unimodular(x)


def random_unitary(rng: np.random.Generator) -> Mat2C:
    """Random element of SU(2), drawn as a unit quaternion."""
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    alpha = complex(q[0], q[1])
    beta = complex(q[2], q[3])
    return Mat2C(alpha, -beta.conjugate(), beta, alpha.conjugate())


def moebius_matrix(
    a: complex, b: complex, c: complex, d: complex, normalize: Optional[bool] = True
) -> Mat2C:
    """Matrix of ``w -> (a w + b)/(c w + d)``, normalized to determinant one by default."""
    x = Mat2C(a, b, c, d)
    return normalize_unimodular(x) if normalize else x
