"""
schema.py – Curve-spec documents and the curves they describe.

A curve spec is a small JSON object naming a ``kind`` plus the expressions
that kind needs, for example::

    {"kind": "legendrian_gauss", "G": "z", "Gstar": "-z"}
    {"kind": "gallery", "name": "dihedral", "params": {"n": 3, "k": 1.0}}

Validation is done with pydantic; every failure surfaces as ``SpecError``.
``build_curve`` parses the expressions and runs the matching constructor.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from flatfront.curves.c3_null import C3Curve, WeierstrassData, integral_free_null
from flatfront.curves.legendrian import (
    GaussPair,
    LegendrianCurve,
    legendrian_from_G_omega,
    legendrian_from_gauss,
)
from flatfront.curves.null_curve import NullData
from flatfront.exceptions import SpecError
from flatfront.expr.nodes import Expr
from flatfront.expr.parser import parse_expr
from flatfront.gallery import GalleryEntry, build_entry
from flatfront.utils.io import read_json

logger = logging.getLogger(__name__)

CurveKind = Literal[
    "legendrian_gauss",
    "legendrian_G_omega",
    "null_small",
    "c3_weierstrass",
    "c3_integral_free",
    "gallery",
]

_EXPR_FIELDS: tuple[str, ...] = ("G", "Gstar", "omega", "g", "h")

_REQUIRED: dict[str, tuple[str, ...]] = {
    "legendrian_gauss": ("G", "Gstar"),
    "legendrian_G_omega": ("G", "omega"),
    "null_small": ("G", "g"),
    "c3_weierstrass": ("g", "omega"),
    "c3_integral_free": ("g", "h"),
    "gallery": ("name",),
}

_ACCEPTS_BASEPOINT = {"legendrian_gauss", "legendrian_G_omega", "c3_weierstrass"}


class CurveSpec(BaseModel):
    """
    Validated curve-spec document.

    Attributes
    ----------
    kind:
        Which construction the document describes.
    G, Gstar, omega, g, h:
        Expression sources; which ones are required depends on ``kind``.
    name:
        Gallery entry name (kind ``gallery`` only).
    params:
        Named constants bound in the expressions, or the gallery parameters.
    basepoint:
        ``[re, im]`` of the base point, where the kind has one.
    c:
        ``[re, im]`` of xi at the base point (kind ``legendrian_gauss`` only).
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: CurveKind
    G: Optional[str] = None
    Gstar: Optional[str] = None
    omega: Optional[str] = None
    g: Optional[str] = None
    h: Optional[str] = None
    name: Optional[str] = None
    params: dict[str, float] = Field(default_factory=dict)
    basepoint: Optional[tuple[float, float]] = None
    c: Optional[tuple[float, float]] = None

    @model_validator(mode="after")
    def _fields_match_kind(self) -> "CurveSpec":
        required = _REQUIRED[self.kind]
        missing = [f for f in required if getattr(self, f) is None]
        if missing:
            raise ValueError(f"kind {self.kind!r} requires {', '.join(missing)}")
        stray = [f for f in (*_EXPR_FIELDS, "name")
                 if f not in required and getattr(self, f) is not None]
        if stray:
            raise ValueError(f"kind {self.kind!r} does not take {', '.join(stray)}")
        if self.basepoint is not None and self.kind not in _ACCEPTS_BASEPOINT:
            raise ValueError(f"kind {self.kind!r} does not take a basepoint")
        if self.c is not None:
            if self.kind != "legendrian_gauss":
                raise ValueError(f"kind {self.kind!r} does not take c")
            if self.c == (0.0, 0.0):
                raise ValueError("c must be nonzero")
        return self

    def label(self) -> str:
        """Short description used in logs and report headers."""
        if self.kind == "gallery":
            params = ", ".join(f"{k}={v:g}" for k, v in sorted(self.params.items()))
            return f"gallery:{self.name}({params})"
        fields = ", ".join(f"{f}={getattr(self, f)}" for f in _REQUIRED[self.kind])
        return f"{self.kind}({fields})"


def spec_from_dict(data: Any) -> CurveSpec:
    """
    Validate a parsed JSON document.

    Raises
    ------
    SpecError
        With the pydantic messages joined on one line.
    """
    try:
        return CurveSpec.model_validate(data)
    except ValidationError as exc:
        messages = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'spec'}: {err['msg']}"
            for err in exc.errors()
        )
        raise SpecError(messages) from exc


def load_spec(path: Path) -> CurveSpec:
    """Read and validate a curve-spec file."""
    try:
        data = read_json(path)
    except (OSError, ValueError) as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    spec = spec_from_dict(data)
    logger.debug("Loaded curve spec %s from %s", spec.label(), path)
    return spec


def gallery_spec(name: str, params: Optional[dict[str, float]] = None) -> CurveSpec:
    return spec_from_dict({"kind": "gallery", "name": name, "params": dict(params or {})})


# ── Construction ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class BuiltCurve:
    """
    A curve spec together with the objects built from it.

    Exactly the fields relevant to ``spec.kind`` are set.
    """

    spec: CurveSpec
    legendrian: Optional[LegendrianCurve] = None
    pair: Optional[GaussPair] = None
    G: Optional[Expr] = None
    entry: Optional[GalleryEntry] = None
    null_data: Optional[NullData] = None
    weierstrass: Optional[WeierstrassData] = None
    c3: Optional[C3Curve] = None
    c3_data: Optional[tuple[Expr, Expr]] = None

    @property
    def kind(self) -> str:
        return self.spec.kind


def _complex(pair: Optional[tuple[float, float]]) -> Optional[complex]:
    return None if pair is None else complex(pair[0], pair[1])


def _parse(spec: CurveSpec, field_name: str) -> Expr:
    source = getattr(spec, field_name)
    try:
        return parse_expr(source, spec.params)
    except ValueError as exc:
        raise SpecError(f"{field_name}: {exc}") from exc


def build_curve(spec: CurveSpec) -> BuiltCurve:
    """
    Parse the expressions of ``spec`` and build its curve.

    ``null_small`` data are only parsed here; the null curve itself is built by
    the verification suite so that a Moebius-related pair is reported rather
    than rejected.

    Raises
    ------
    ExprSyntaxError, UnknownIdentifierError
        On malformed expressions.
    SpecError
        When a parameter shadows a reserved name.
    DegenerateCurveError
        When the data violate a construction hypothesis.
    GalleryParameterError
        For an unknown gallery entry or invalid parameters.
    """
    kind = spec.kind
    if kind == "gallery":
        assert spec.name is not None
        entry = build_entry(spec.name, spec.params)
        return BuiltCurve(spec=spec, entry=entry, legendrian=entry.curve(),
                          pair=entry.gauss_pair(), G=entry.G)
    if kind == "legendrian_gauss":
        c = _complex(spec.c)
        pair = GaussPair(G=_parse(spec, "G"), Gstar=_parse(spec, "Gstar"),
                         z0=_complex(spec.basepoint), c=1.0 if c is None else c)
        return BuiltCurve(spec=spec, legendrian=legendrian_from_gauss(pair), pair=pair, G=pair.G)
    if kind == "legendrian_G_omega":
        G = _parse(spec, "G")
        E = legendrian_from_G_omega(G, _parse(spec, "omega"), z0=_complex(spec.basepoint))
        return BuiltCurve(spec=spec, legendrian=E, G=G)
    if kind == "null_small":
        return BuiltCurve(spec=spec, null_data=NullData(G=_parse(spec, "G"), g=_parse(spec, "g")))
    if kind == "c3_weierstrass":
        data = WeierstrassData(g=_parse(spec, "g"), omega=_parse(spec, "omega"),
                               basepoint=_complex(spec.basepoint))
        return BuiltCurve(spec=spec, weierstrass=data)
    g, h = _parse(spec, "g"), _parse(spec, "h")
    return BuiltCurve(spec=spec, c3=integral_free_null(g, h), c3_data=(g, h))
