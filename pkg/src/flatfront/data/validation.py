"""
validation.py – Identity suites behind ``flatfront verify``.

Each suite samples seeded random points, evaluates the defining identities of
its curve kind and turns the largest residual of every identity into a
``VerificationRecord``. A report passes iff every record passes; the
conditions report and the monodromy matrices are informational.

Residuals are relative wherever the compared quantities can be large:
``|a - b| / (1 + |b|)``.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
import pandas as pd

from flatfront.config_resolver import ResolvedConfig
from flatfront.constants import SCHWARZIAN_TOL
from flatfront.curves.c3_null import (
    C3Curve,
    WeierstrassData,
    extract_h_data,
    extract_weierstrass,
    nullity_residual,
    weierstrass_basepoint,
    weierstrass_integrands,
    weierstrass_integrate,
)
from flatfront.curves.legendrian import (
    GaussPair,
    LegendrianCurve,
    check_conditions,
    dual_curve,
    gauss_from_legendrian,
    hopf_legendrian,
    legendrian_from_gauss,
    legendrian_residuals,
    monodromy,
    parallel_curve,
    schwarzian_of_primitive,
    xi_form,
)
from flatfront.curves.null_curve import (
    NullData,
    gauss_from_null,
    hopf_null,
    null_residuals,
    schwarzian,
    secondary_gauss_via_mc,
    small_null,
)
from flatfront.data.schema import BuiltCurve
from flatfront.exceptions import (
    BranchPointError,
    DegenerateCurveError,
    NotRationalError,
    PoleError,
    VerificationError,
)
from flatfront.expr import nodes
from flatfront.expr.continuation import continue_many
from flatfront.expr.diff import differentiate
from flatfront.expr.evaluate import evaluate_many
from flatfront.expr.nodes import Expr
from flatfront.expr.rational import poles, singular_points
from flatfront.front.flat_front import apply_isometry, project_matrix, singularity_array
from flatfront.gallery import GalleryEntry, SampleRegion, build_entry
from flatfront.psl2 import Mat2C, is_infinite, psl_distance
from flatfront.types import ConditionsReport, Construction, MonodromyResult, PathC
from flatfront.utils.hashing import short, spec_fingerprint
from flatfront.utils.sampling import route, sample_points

logger = logging.getLogger(__name__)

_DEFAULT_REGION = SampleRegion(0j, 0.3, 2.5)
_ROUTE_SAMPLES = 50
_PROBE_SAMPLES = 10
_POLE_OFFSET = 1e-8
_POLE_THRESHOLD = 1e3
_SINGULAR_SET_TOL = 1e-10
_MONODROMY_TOL = 1e-7
_SYMMETRY_TOL = 1e-7

_LEGENDRIAN_IDENTITIES: tuple[tuple[str, str], ...] = (
    ("det", "det E = 1"),
    ("contact", "E annihilates the contact form D dA - B dC"),
    ("mc_diagonal", "E^-1 dE has vanishing diagonal"),
    ("omega_cross", "omega agrees with dA/B and dC/D"),
    ("theta_cross", "theta agrees with dB/A and dD/C"),
)


# ── Report types ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class VerificationRecord:
    """
    Outcome of one identity over the sampled points.

    Attributes
    ----------
    name:
        Identity name, e.g. ``"det"``.
    statement:
        The identity in words.
    samples:
        Number of points (or loops) it was checked at.
    max_residual:
        Largest residual seen; non-finite when evaluation broke down.
    tolerance:
        Pass threshold.
    passed:
        ``max_residual <= tolerance`` with every residual finite.
    """

    name: str
    statement: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class MonodromyRecord:
    label: str
    result: MonodromyResult
    expected: Optional[Mat2C] = None
    distance: Optional[float] = None


@dataclass
class VerificationReport:
    """
    Every record produced for one curve spec.

    Attributes
    ----------
    subject:
        Human-readable curve label.
    kind:
        Curve-spec kind.
    fingerprint:
        Digest of the spec and sampling settings.
    records:
        One record per identity.
    conditions:
        Descent conditions of the Gauss pair, when the curve has one.
    monodromy:
        Monodromy around each generator loop, when the curve has loops.
    """

    subject: str
    kind: str
    fingerprint: str
    records: list[VerificationRecord] = field(default_factory=list)
    conditions: Optional[ConditionsReport] = None
    monodromy: list[MonodromyRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list[VerificationRecord]:
        return [r for r in self.records if not r.passed]

    def to_frame(self) -> pd.DataFrame:
        """One row per record."""
        columns = [f.name for f in dataclasses.fields(VerificationRecord)]
        return pd.DataFrame([dataclasses.asdict(r) for r in self.records], columns=columns)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready view; complex numbers stay complex for ``dumps_stable``."""
        out: dict[str, Any] = {
            "subject": self.subject,
            "kind": self.kind,
            "fingerprint": self.fingerprint,
            "passed": self.passed,
            "records": [dataclasses.asdict(r) for r in self.records],
            "monodromy": [_monodromy_dict(m) for m in self.monodromy],
            "conditions": None,
        }
        if self.conditions is not None:
            c = self.conditions
            out["conditions"] = {
                "verdict": c.verdict.value,
                "pole_analysis_available": c.pole_analysis_available,
                "pole_checks": [
                    {"point": p.point, "order": p.order, "passed": p.passed}
                    for p in c.pole_checks
                ],
                "period_checks": [
                    {"loop_start": p.loop.start, "period": p.period,
                     "nearest": p.nearest, "passed": p.passed}
                    for p in c.period_checks
                ],
            }
        return out


def _matrix_rows(m: Mat2C) -> list[list[complex]]:
    return [[m.a, m.b], [m.c, m.d]]


def _monodromy_dict(m: MonodromyRecord) -> dict[str, Any]:
    return {
        "label": m.label,
        "loop_start": m.result.loop.start,
        "classification": m.result.classification.value,
        "matrix": _matrix_rows(m.result.matrix),
        "expected": None if m.expected is None else _matrix_rows(m.expected),
        "distance": m.distance,
    }


# ── Helpers ───────────────────────────────────────────────────────────────────

def _record(
    name: str,
    statement: str,
    residuals: Any,
    tolerance: float,
    samples: Optional[int] = None,
) -> VerificationRecord:
    r = np.abs(np.asarray(residuals, dtype=float)).ravel()
    worst = float(np.max(r)) if r.size else 0.0
    passed = bool(np.all(np.isfinite(r))) and worst <= tolerance
    if not passed:
        logger.warning("Identity %s failed: residual %.3e > %.1e", name, worst, tolerance)
    count = int(r.size) if samples is None else samples
    return VerificationRecord(name, statement, count, worst, tolerance, passed)


def _rel(a: Any, b: Any) -> Any:
    """Relative difference ``|a - b| / (1 + |b|)``, elementwise."""
    a_arr = np.asarray(a, dtype=complex)
    b_arr = np.asarray(b, dtype=complex)
    return np.abs(a_arr - b_arr) / (1.0 + np.abs(b_arr))


def _rel_point(a: complex, b: complex) -> float:
    if is_infinite(a) or is_infinite(b):
        return 0.0 if is_infinite(a) and is_infinite(b) else math.inf
    return abs(a - b) / (1.0 + abs(b))


def _singular_union(exprs: Sequence[Expr]) -> list[complex]:
    found: list[complex] = []
    for e in exprs:
        for p in singular_points(e):
            if not any(abs(p - q) <= 1e-9 * (1 + abs(p)) for q in found):
                found.append(p)
    return found


def _sample(
    rng: np.random.Generator, cfg: ResolvedConfig, region: SampleRegion, avoid: Sequence[complex]
) -> np.ndarray:
    return sample_points(rng, cfg.samples, region.center, region.rmin, region.rmax,
                         avoid=(*region.avoid, *avoid))


def default_loops(form: Expr, singular: Sequence[complex] = ()) -> list[PathC]:
    """
    One circle around every finite pole of a rational form.

    Each radius is 0.4 times the distance to the nearest other pole or singular
    point, capped at 0.5. Non-rational forms get no loops.
    """
    try:
        centers = [p for p, _ in poles(form)]
    except NotRationalError:
        return []
    loops = []
    for p in centers:
        gaps = [abs(q - p) for q in (*centers, *singular) if abs(q - p) > 1e-9]
        radius = min(0.5, 0.4 * min(gaps)) if gaps else 0.5
        loops.append(PathC.circle(p, radius))
    return loops


def _winding_number(vertices: Sequence[complex], p: complex) -> int:
    v = np.asarray(vertices, dtype=complex) - p
    turns = np.angle(np.roll(v, -1) / v).sum() / (2 * math.pi)
    return int(round(float(turns)))


# ── Null curves in PSL(2,C) ───────────────────────────────────────────────────

def verify_null(
    data: NullData, cfg: ResolvedConfig, rng: np.random.Generator
) -> list[VerificationRecord]:
    """
    Identities of the null curve built from ``(G, g)``.

    A Moebius-related pair yields a single failed ``g-is-moebius-of-G`` record.
    """
    try:
        F = small_null(data)
    except DegenerateCurveError as exc:
        if exc.reason != "g-is-moebius-of-G":
            raise
        logger.warning("g is a Moebius transformation of G; no null curve")
        return [VerificationRecord("g-is-moebius-of-G",
                                   "g is not a Moebius transformation of G",
                                   0, math.inf, cfg.tol, False)]

    pts = _sample(rng, cfg, _DEFAULT_REGION, _singular_union([*F.entries(), data.G, data.g]))
    few = pts[:_ROUTE_SAMPLES]
    res = null_residuals(F, pts)
    records = [
        _record("det", "det F = 1", [res["det"]], cfg.tol, len(pts)),
        _record("det_dF", "dF is a degenerate matrix", [res["det_dF"]], cfg.tol, len(pts)),
    ]

    (G_vals, g_vals), _ = evaluate_many([data.G, data.g], few)
    gauss_res, mc_res = [], []
    for z, G_exp, g_exp in zip(few, G_vals, g_vals):
        G_got, g_got = gauss_from_null(F, complex(z))
        gauss_res.append(max(_rel_point(G_got, complex(G_exp)), _rel_point(g_got, complex(g_exp))))
        mc_res.append(_rel_point(secondary_gauss_via_mc(F, complex(z)), complex(g_exp)))
    records.append(_record("gauss_maps", "(dA/dC, -dB/dA) = (G, g)", gauss_res, cfg.tol))
    records.append(_record("secondary_gauss_mc", "g is read off F^-1 dF", mc_res, cfg.tol))

    (sg, sG, q), _ = evaluate_many([schwarzian(data.g), schwarzian(data.G), hopf_null(F, data.g)],
                                   few)
    records.append(_record(
        "schwarzian", "S(g) - S(G) = 2Q with Q = (A dC - C dA) dg",
        np.abs(sg - sG - 2 * q) / (1.0 + np.abs(sg) + np.abs(sG)), SCHWARZIAN_TOL,
    ))
    return records


# ── Legendrian curves ─────────────────────────────────────────────────────────

def _pole_growth(Eg: LegendrianCurve, pair: GaussPair) -> list[float]:
    """``threshold / max|E|`` just off every finite zero of ``G - G*``."""
    assert Eg.xi_form is not None
    try:
        candidates = [p for p, _ in poles(Eg.xi_form)]
    except NotRationalError:
        return []
    out = []
    for p in candidates:
        try:
            (gv, gsv), _ = evaluate_many([pair.G, pair.Gstar], p)
        except (PoleError, BranchPointError):
            continue
        if abs(gv - gsv) > 1e-8 * (1.0 + abs(gv)):
            continue
        toward = (Eg.basepoint - p) / abs(Eg.basepoint - p)
        m = Eg.at(p + _POLE_OFFSET * toward)
        size = max(abs(m.a), abs(m.b), abs(m.c), abs(m.d))
        out.append(_POLE_THRESHOLD / size)
    return out


def verify_legendrian(
    E: LegendrianCurve,
    cfg: ResolvedConfig,
    rng: np.random.Generator,
    G: Optional[Expr] = None,
    pair: Optional[GaussPair] = None,
    region: SampleRegion = _DEFAULT_REGION,
) -> list[VerificationRecord]:
    """
    Identities of a Legendrian curve, plus the Gauss-pair checks when ``pair`` is given.

    All values are principal, so every point is compared on one consistent branch.
    """
    omega, theta = E.forms
    known = [e for e in (G, pair.Gstar if pair else None) if e is not None]
    avoid = (*E.singular_set, *_singular_union([omega, theta, *known]))
    pts = _sample(rng, cfg, region, avoid)
    few = [complex(z) for z in pts[:_ROUTE_SAMPLES]]
    few_arr = np.asarray(few, dtype=complex)

    res = legendrian_residuals(E, pts)
    records = [_record(name, statement, [res[name]], cfg.tol, len(pts))
               for name, statement in _LEGENDRIAN_IDENTITIES]

    twice = dual_curve(dual_curve(E))
    records.append(_record("dual_involution", "the dual of the dual curve is the curve",
                           [psl_distance(twice.at(z), E.at(z)) for z in few], cfg.tol))

    if G is not None:
        (sg, sG, q), _ = evaluate_many(
            [schwarzian_of_primitive(omega), schwarzian(G), nodes.mul(omega, theta)], few_arr
        )
        records.append(_record(
            "schwarzian", "S(g) - S(G) = 2 omega theta for dg = omega",
            np.abs(sg - sG - 2 * q) / (1.0 + np.abs(sg) + np.abs(sG)), SCHWARZIAN_TOL,
        ))

    if pair is None:
        return records

    (Gv, Gsv, q, hopf), _ = evaluate_many(
        [pair.G, pair.Gstar, nodes.mul(omega, theta), hopf_legendrian(pair)], few_arr
    )
    gauss_res = []
    for z, g1, g2 in zip(few, Gv, Gsv):
        a, b = gauss_from_legendrian(E, z)
        gauss_res.append(max(_rel_point(a, complex(g1)), _rel_point(b, complex(g2))))
    records.append(_record("gauss_pair", "(A/C, B/D) = (G, G*)", gauss_res, cfg.tol))
    records.append(_record("hopf", "omega theta = -dG dG* / (G - G*)^2", _rel(q, hopf), cfg.tol))

    Eg = E if E.construction is Construction.FROM_GAUSS_PAIR else legendrian_from_gauss(pair)
    assert Eg.xi is not None
    canonical = nodes.neg(nodes.div(differentiate(pair.G), nodes.int_power(Eg.xi, 2)))
    (wg, wc), _ = evaluate_many([Eg.forms[0], canonical], few_arr)
    records.append(_record("canonical_form", "omega = -dG / xi^2", _rel(wg, wc), cfg.tol))

    growth = _pole_growth(Eg, pair)
    if growth:
        records.append(_record("pole_locus", "E has a pole wherever G = G*", growth, 1.0))
    return records


def _conditions_for(pair: GaussPair, loops: Sequence[PathC], cfg: ResolvedConfig) -> ConditionsReport:
    return check_conditions(pair, loops, period_tol=cfg.period_tol,
                            abs_tol=cfg.quad_abs_tol, max_evals=cfg.quad_max_evals)


# ── Gallery ───────────────────────────────────────────────────────────────────

def verify_gallery(
    entry: GalleryEntry, cfg: ResolvedConfig, rng: np.random.Generator
) -> tuple[list[VerificationRecord], list[MonodromyRecord]]:
    """
    Legendrian identities plus every published fact recorded on ``entry``.

    Route-based comparisons continue each quantity from the base point along
    ``entry.route_to(z)``, so closed forms and both constructions are compared
    on the same branch.
    """
    E = entry.curve()
    st = entry.statements
    region = entry.sample_region()
    records = verify_legendrian(E, cfg, rng, G=entry.G, pair=entry.gauss_pair(), region=region)

    omega, theta = E.forms
    pts = [complex(z) for z in _sample(rng, cfg, region, E.singular_set)[:_ROUTE_SAMPLES]]
    exprs = [omega, entry.omega] + ([theta, entry.theta] if entry.theta is not None else [])
    vals, _ = evaluate_many(exprs, np.asarray(pts))
    records.append(_record("omega", st.get("omega", "canonical form"), _rel(vals[0], vals[1]),
                           cfg.tol))
    if entry.theta is not None:
        records.append(_record("theta", st.get("theta", "dual canonical form"),
                               _rel(vals[2], vals[3]), cfg.tol))

    routes = [(z, entry.route_to(z)) for z in pts]
    Eg = entry.curve_from_gauss()
    values = [E.at(z, path) for z, path in routes]
    records.append(_record(
        "cross_construction", "the (G, G*) and (G, omega) constructions agree",
        [psl_distance(m, Eg.at(z, path)) for m, (z, path) in zip(values, routes)], cfg.tol,
    ))
    if entry.closed_form is not None:
        closed = []
        for m, (z, path) in zip(values, routes):
            expected = entry.expected_matrix(z, path)
            assert expected is not None
            closed.append(psl_distance(m, expected))
        records.append(_record("closed_form", st["closed_form"], closed, cfg.tol))

    mono_records, mono_res, descent_res = [], [], []
    base = E.at(entry.basepoint)
    f0 = base @ base.dagger()
    for deck in entry.deck_loops():
        result = monodromy(E, deck.loop, tol=_MONODROMY_TOL,
                           clearance_factor=cfg.clearance_factor, max_arg_step=cfg.max_arg_step)
        distance = psl_distance(result.matrix, deck.expected)
        mono_records.append(MonodromyRecord(deck.label, result, deck.expected, distance))
        mono_res.append(distance)
        end = base @ result.matrix
        descent_res.append((end @ end.dagger() - f0).frobenius() / (1.0 + f0.frobenius()))
    if mono_res:
        records.append(_record("monodromy", st["monodromy"], mono_res, _MONODROMY_TOL))
        if entry.descends:
            records.append(_record("descent", st["descent"], descent_res, cfg.tol))

    if entry.symmetry is not None:
        factor, a = entry.symmetry
        sym = []
        for m, (z, _) in zip(values[:_PROBE_SAMPLES], routes[:_PROBE_SAMPLES]):
            w = factor * z
            moved = apply_isometry(a, project_matrix(m)).x
            target = project_matrix(E.at(w, entry.route_to(w))).x
            sym.append((target - moved).frobenius() / (1.0 + target.frobenius()))
        records.append(_record("symmetry", st["symmetry"], sym, _SYMMETRY_TOL))

    if entry.parallel_family:
        other = build_entry(entry.name, {**entry.params, "k": 2 * entry.params["k"]})
        shifted = parallel_curve(E, math.log(2.0))
        E2 = other.curve()
        probe = pts[:_PROBE_SAMPLES]
        (w1, w2), _ = evaluate_many([entry.omega, other.omega], np.asarray(probe))
        res = [max(psl_distance(shifted.at(z), E2.at(z)), abs(r - 0.5))
               for z, r in zip(probe, w1 / w2)]
        records.append(_record("parallel_family", st["parallel"], res, cfg.tol))

    if "singular_set" in st:
        circle = np.exp(2j * np.pi * (np.arange(16) + 0.5) / 16)
        (w, t), _ = evaluate_many([omega, theta], circle)
        records.append(_record("singular_set", st["singular_set"], singularity_array(w, t),
                               _SINGULAR_SET_TOL))
    return records, mono_records


# ── Null curves in C^3 ────────────────────────────────────────────────────────

def _integrand_residual(data: WeierstrassData, dF: Sequence[Expr], pts: np.ndarray) -> np.ndarray:
    values, _ = evaluate_many([*dF, *weierstrass_integrands(data)], pts)
    scale = 1.0 + sum(np.abs(v) for v in values[:3])
    return np.max([np.abs(values[j] - values[j + 3]) for j in range(3)], axis=0) / scale


def verify_c3_integral_free(
    F: C3Curve, g: Expr, h: Expr, cfg: ResolvedConfig, rng: np.random.Generator
) -> list[VerificationRecord]:
    """Nullity, Weierstrass data, recovery of ``h`` and agreement with integration."""
    pts = _sample(rng, cfg, _DEFAULT_REGION, _singular_union([*F.components(), g, h]))
    records = [_record("nullity", "sum (dFj)^2 = 0", [nullity_residual(F, pts)], cfg.tol,
                       len(pts))]
    try:
        data = extract_weierstrass(F, cfg.tol)
        h_rec, _, _ = extract_h_data(F, cfg.tol)
    except VerificationError as exc:
        records.append(_record(exc.identity, "F is recovered from its Weierstrass data",
                               [exc.residual], cfg.tol))
        return records
    dF = F.derivative().components()
    records.append(_record("weierstrass_formula", "dF is given by the Weierstrass formula",
                           _integrand_residual(data, dF, pts), cfg.tol))
    (h_got, h_exp), _ = evaluate_many([h_rec, h], pts)
    records.append(_record("h_roundtrip", "h is recovered from F", _rel(h_got, h_exp), cfg.tol))

    z0 = weierstrass_basepoint(data)
    avoid = _singular_union([*F.components(), *weierstrass_integrands(data)])
    start, _ = evaluate_many(F.components(), z0)
    consistency = []
    for z in pts[:_PROBE_SAMPLES]:
        path = route(z0, complex(z), avoid)
        end, _ = continue_many(F.components(), path, clearance_factor=cfg.clearance_factor,
                               max_arg_step=cfg.max_arg_step)
        integral = weierstrass_integrate(data, path, cfg.quad_abs_tol, cfg.quad_max_evals)
        consistency.append(max(
            float(_rel(integral[j], complex(end[j]) - complex(start[j]))) for j in range(3)
        ))
    records.append(_record("integration", "F(z) - F(z0) is the Weierstrass integral",
                           consistency, cfg.tol))
    return records


def verify_c3_weierstrass(
    data: WeierstrassData, cfg: ResolvedConfig, rng: np.random.Generator
) -> list[VerificationRecord]:
    """Nullity of the integrands and path independence away from the singular set."""
    integrands = weierstrass_integrands(data)
    avoid = _singular_union([*integrands, data.g, data.omega])
    pts = _sample(rng, cfg, _DEFAULT_REGION, avoid)
    values, _ = evaluate_many(integrands, pts)
    squares = np.abs(sum(v**2 for v in values)) / (1.0 + sum(np.abs(v) ** 2 for v in values))
    records = [_record("integrand_nullity", "the Weierstrass integrands form a null vector",
                       squares, cfg.tol)]

    z0 = weierstrass_basepoint(data)
    independence = []
    for z in (complex(p) for p in pts[:_PROBE_SAMPLES]):
        waypoint = (z0 + z) / 2 + 0.3j * (z - z0)
        direct = route(z0, z, avoid)
        detour = route(z0, waypoint, avoid).then(route(waypoint, z, avoid))
        polygon = [*direct.points(), *reversed(detour.points()[1:-1])]
        if any(_winding_number(polygon, p) != 0 for p in avoid):
            continue
        a = weierstrass_integrate(data, direct, cfg.quad_abs_tol, cfg.quad_max_evals)
        b = weierstrass_integrate(data, detour, cfg.quad_abs_tol, cfg.quad_max_evals)
        independence.append(max(float(_rel(a[j], b[j])) for j in range(3)))
    records.append(_record("path_independence",
                           "homotopic paths give the same Weierstrass integral",
                           independence, cfg.tol))
    return records


# ── Entry point ───────────────────────────────────────────────────────────────

def run_verification(built: BuiltCurve, cfg: ResolvedConfig) -> VerificationReport:
    """
    Run the suite for ``built.kind`` with the seed and sample count of ``cfg``.

    Raises
    ------
    DegenerateCurveError
        For hypothesis violations other than a Moebius-related null pair.
    """
    rng = np.random.default_rng(cfg.seed)
    spec = built.spec
    report = VerificationReport(
        subject=spec.label(),
        kind=built.kind,
        fingerprint=spec_fingerprint(spec.model_dump(mode="json"), seed=cfg.seed,
                                     samples=cfg.samples, tol=cfg.tol),
    )
    if built.entry is not None:
        records, mono = verify_gallery(built.entry, cfg, rng)
        report.records.extend(records)
        report.monodromy.extend(mono)
        report.conditions = _conditions_for(built.entry.gauss_pair(),
                                            [d.loop for d in built.entry.deck_loops()], cfg)
    elif built.legendrian is not None:
        E = built.legendrian
        report.records.extend(verify_legendrian(E, cfg, rng, G=built.G, pair=built.pair))
        if built.pair is not None:
            loops = default_loops(xi_form(built.pair), E.singular_set)
            report.conditions = _conditions_for(built.pair, loops, cfg)
    elif built.null_data is not None:
        report.records.extend(verify_null(built.null_data, cfg, rng))
    elif built.weierstrass is not None:
        report.records.extend(verify_c3_weierstrass(built.weierstrass, cfg, rng))
    else:
        assert built.c3 is not None and built.c3_data is not None
        g, h = built.c3_data
        report.records.extend(verify_c3_integral_free(built.c3, g, h, cfg, rng))

    passed = sum(r.passed for r in report.records)
    logger.info("Verified %s [%s]: %d/%d identities passed", report.subject,
                short(report.fingerprint), passed, len(report.records))
    return report
