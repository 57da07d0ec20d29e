"""
exceptions.py – Custom exception hierarchy for flatfront.

Every exception carries a stable machine-readable ``code`` plus the context
needed to diagnose which expression, point or path triggered it.
"""

from __future__ import annotations

from typing import Optional


class FlatFrontError(Exception):
    """Base exception for flatfront. All library errors inherit from this."""

    code: str = "flatfront-error"


# ── Expression layer ──────────────────────────────────────────────────────────

class ExprSyntaxError(FlatFrontError):
    """
    Raised when an expression source string does not conform to the grammar.

    Attributes
    ----------
    source:
        The text being parsed.
    position:
        Zero-based character offset where parsing failed.
    detail:
        What the parser expected or found.
    """

    code = "syntax-error"

    def __init__(self, source: str, position: int, detail: str) -> None:
        self.source = source
        self.position = position
        self.detail = detail
        super().__init__(f"Syntax error at position {position} in {source!r}: {detail}")


class UnknownIdentifierError(FlatFrontError):
    """
    Raised when an identifier is neither ``z``, ``i``, a function name nor a bound parameter.

    Attributes
    ----------
    name:
        The offending identifier.
    position:
        Zero-based character offset of the identifier.
    """

    code = "unknown-identifier"

    def __init__(self, name: str, position: int) -> None:
        self.name = name
        self.position = position
        super().__init__(f"Unknown identifier {name!r} at position {position}")


class NotRationalError(FlatFrontError):
    """
    Raised when a rational-only operation meets exp, log, sqrt or a complex power.

    Attributes
    ----------
    node_kind:
        Class name of the first non-rational node encountered.
    """

    code = "not-rational"

    def __init__(self, node_kind: str) -> None:
        self.node_kind = node_kind
        super().__init__(f"Expression is not rational: contains {node_kind}")


# ── Numerical evaluation ──────────────────────────────────────────────────────

class PoleError(FlatFrontError):
    """
    Raised when an expression is evaluated at one of its poles.

    Attributes
    ----------
    point:
        The evaluation point.
    """

    code = "pole-at-point"

    def __init__(self, point: complex, detail: Optional[str] = None) -> None:
        self.point = point
        msg = f"Pole at z={point}"
        super().__init__(msg + (f": {detail}" if detail else ""))


class BranchPointError(FlatFrontError):
    """
    Raised when log, sqrt or a complex power is evaluated where its argument vanishes.

    Attributes
    ----------
    point:
        The evaluation point.
    """

    code = "branch-point-at-point"

    def __init__(self, point: complex) -> None:
        self.point = point
        super().__init__(f"Branch point at z={point}")


class PathClearanceError(FlatFrontError):
    """
    Raised when a path passes closer to a singularity than the configured clearance.

    Attributes
    ----------
    point:
        The singular point that is too close.
    distance:
        Distance from the path to the point.
    clearance:
        The clearance that was required.
    """

    code = "path-too-close-to-singularity"

    def __init__(self, point: complex, distance: float, clearance: float) -> None:
        self.point = point
        self.distance = distance
        self.clearance = clearance
        super().__init__(
            f"Path passes within {distance:.3e} of singularity {point} "
            f"(clearance {clearance:.3e})"
        )


class ContinuationError(FlatFrontError):
    """
    Raised when analytic continuation cannot make progress along a path.

    Attributes
    ----------
    point:
        Where the step size collapsed.
    detail:
        Diagnostic detail.
    """

    code = "continuation-failed"

    def __init__(self, point: complex, detail: str) -> None:
        self.point = point
        self.detail = detail
        super().__init__(f"Continuation failed near z={point}: {detail}")


class QuadratureError(FlatFrontError):
    """
    Raised when adaptive quadrature misses its tolerance or evaluation budget.

    Attributes
    ----------
    detail:
        Diagnostic message from the integrator.
    estimate:
        Error estimate reported by the integrator, if any.
    """

    code = "quadrature-failed"

    def __init__(self, detail: str, estimate: Optional[float] = None) -> None:
        self.detail = detail
        self.estimate = estimate
        suffix = f" (error estimate {estimate:.3e})" if estimate is not None else ""
        super().__init__(f"Quadrature failed: {detail}{suffix}")


class IndeterminateQuotientError(FlatFrontError):
    """
    Raised when a Gauss map quotient is 0/0 at the requested point.

    Attributes
    ----------
    point:
        The evaluation point.
    quotient:
        Name of the quotient, e.g. ``"A/C"``.
    """

    code = "indeterminate-quotient"

    def __init__(self, point: complex, quotient: str) -> None:
        self.point = point
        self.quotient = quotient
        super().__init__(f"Quotient {quotient} is 0/0 at z={point}")


# ── Curve construction and verification ───────────────────────────────────────

class DegenerateCurveError(FlatFrontError):
    """
    Raised when input data violate a construction hypothesis.

    The ``reason`` doubles as the machine code, e.g. ``constant-G``,
    ``g-is-moebius-of-G``, ``G-identically-Gstar``, ``zero-omega``,
    ``degenerate-alpha``, ``all-branches-degenerate``, ``all-branches-undefined``,
    ``degenerate-omega`` or ``constant-input``.

    Attributes
    ----------
    reason:
        The hypothesis that failed.
    detail:
        Optional human-readable detail.
    """

    def __init__(self, reason: str, detail: Optional[str] = None) -> None:
        self.reason = reason
        self.code = reason
        self.detail = detail
        super().__init__(f"Degenerate input ({reason})" + (f": {detail}" if detail else ""))


class VerificationError(FlatFrontError):
    """
    Raised when a derived identity fails at sample points (e.g. non-null input).

    Attributes
    ----------
    identity:
        Name of the identity that failed.
    residual:
        Largest residual observed.
    """

    code = "verification-failed"

    def __init__(self, identity: str, residual: float) -> None:
        self.identity = identity
        self.residual = residual
        super().__init__(f"Identity {identity!r} failed with residual {residual:.3e}")


class FrontBranchPointError(FlatFrontError):
    """
    Raised when both canonical forms vanish, so the singularity indicator is undefined.

    Attributes
    ----------
    point:
        The evaluation point, when known.
    """

    code = "both-zero"

    def __init__(self, point: Optional[complex] = None) -> None:
        self.point = point
        where = f" at z={point}" if point is not None else ""
        super().__init__(f"omega and theta both vanish{where} (branch point of the front)")


class GridError(FlatFrontError):
    """
    Raised when a mesh grid places a vertex on a pole or branch point of the curve.

    Attributes
    ----------
    point:
        The offending singular point.
    """

    code = "grid-hits-pole"

    def __init__(self, point: complex) -> None:
        self.point = point
        super().__init__(f"Grid vertex coincides with singular point z={point}")


# ── Inputs ────────────────────────────────────────────────────────────────────

class GalleryParameterError(FlatFrontError):
    """
    Raised when gallery parameters fall outside their validity ranges.

    Attributes
    ----------
    name:
        Gallery entry name.
    reason:
        Machine code: ``nonpositive-k``, ``invalid-mu``, ``invalid-n``, ``unknown-parameter``
        or ``unknown-entry``.
    """

    def __init__(self, name: str, reason: str, detail: str) -> None:
        self.name = name
        self.reason = reason
        self.code = reason
        super().__init__(f"Invalid parameters for gallery entry {name!r}: {detail}")


class SpecError(FlatFrontError):
    """
    Raised when a curve-spec document is malformed.

    Attributes
    ----------
    detail:
        Validation messages.
    """

    code = "invalid-spec"

    def __init__(self, detail: str) -> None:
        self.detail = detail
        super().__init__(f"Invalid curve spec: {detail}")
