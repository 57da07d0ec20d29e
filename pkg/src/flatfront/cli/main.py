"""
main.py – CLI entry points for flatfront.

Commands:
  gallery list    List the gallery families and their default parameters.
  gallery build   Mesh and/or verify one gallery entry.
  verify          Run the identity suites for a curve spec.
  sample          Evaluate a curve spec at given points.
  mesh            Mesh the front of a Legendrian curve spec.

Usage:
  flatfront gallery build dihedral --param n=3 --param k=1.0 --mesh out.ply
  flatfront verify --spec curve.json --samples 200 --tol 1e-8 --report report.json
  flatfront sample --spec curve.json --point 1,0 --point 0.5,0.5
  flatfront mesh --spec curve.json --grid 0.2,5,32,64 --mesh out.ply

Exit codes: 0 success, 1 failed verification, 2 invalid input, 3 numerical
failure. Errors are reported as one JSON object per line on stderr.
"""

from __future__ import annotations

import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any, NoReturn, Optional

import click
from rich.console import Console
from rich.table import Table

from flatfront.config import FrontConfig
from flatfront.config_resolver import ResolvedConfig, resolve_config
from flatfront.constants import (
    EXIT_INVALID_SPEC,
    EXIT_NUMERICAL_FAILURE,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
)
from flatfront.data.outputs import sample_rows, write_ply, write_report
from flatfront.data.schema import BuiltCurve, build_curve, gallery_spec, load_spec
from flatfront.data.validation import VerificationReport, run_verification
from flatfront.exceptions import (
    DegenerateCurveError,
    ExprSyntaxError,
    FlatFrontError,
    GalleryParameterError,
    GridError,
    NotRationalError,
    SpecError,
    UnknownIdentifierError,
)
from flatfront.front.mesh import sample_mesh
from flatfront.gallery import build_entry, gallery_names
from flatfront.types import AnnularGrid, Grid, RunRequest
from flatfront.utils.io import dumps_stable
from flatfront.utils.logging import configure_logging, get_logger

logger = get_logger(__name__)

_INVALID_INPUT = (
    SpecError,
    GalleryParameterError,
    ExprSyntaxError,
    UnknownIdentifierError,
    DegenerateCurveError,
    NotRationalError,
    GridError,
)


# ── Error reporting ───────────────────────────────────────────────────────────

def _fail(exit_code: int, code: str, message: str) -> NoReturn:
    click.echo(dumps_stable({"error": code, "message": message}), err=True)
    sys.exit(exit_code)


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Map library errors to exit codes with a one-line JSON error on stderr."""
    try:
        yield
    except _INVALID_INPUT as exc:
        logger.debug("Invalid input", exc_info=True)
        _fail(EXIT_INVALID_SPEC, exc.code, str(exc))
    except FlatFrontError as exc:
        logger.debug("Numerical failure", exc_info=True)
        _fail(EXIT_NUMERICAL_FAILURE, exc.code, str(exc))
    except ValueError as exc:
        _fail(EXIT_INVALID_SPEC, "invalid-argument", str(exc))


class _FlatFrontGroup(click.Group):
    """Click group whose usage errors follow the same one-line JSON convention."""

    def main(self, *args: Any, standalone_mode: bool = True, **kwargs: Any) -> Any:
        try:
            rv = super().main(*args, standalone_mode=False, **kwargs)
        except click.ClickException as exc:
            _fail(EXIT_INVALID_SPEC, "usage-error", exc.format_message())
        except click.Abort:
            _fail(EXIT_INVALID_SPEC, "aborted", "aborted")
        if not standalone_mode:
            return rv
        sys.exit(rv if isinstance(rv, int) else EXIT_OK)


# ── Shared options ────────────────────────────────────────────────────────────

def _parse_params(ctx: click.Context, param: click.Parameter, value: tuple[str, ...]) -> dict[str, float]:
    out: dict[str, float] = {}
    for item in value:
        name, sep, raw = item.partition("=")
        if not sep or not name.strip():
            raise click.BadParameter(f"Expected name=value, got: {item!r}")
        try:
            out[name.strip()] = float(raw)
        except ValueError:
            raise click.BadParameter(f"Not a number in {item!r}")
    return out


def _parse_grid(ctx: click.Context, param: click.Parameter, value: Optional[str]) -> Optional[Grid]:
    if value is None:
        return None
    parts = value.split(",")
    if len(parts) != 4:
        raise click.BadParameter(f"Expected rmin,rmax,nr,ntheta, got: {value!r}")
    try:
        return AnnularGrid(0j, float(parts[0]), float(parts[1]), int(parts[2]), int(parts[3]))
    except ValueError as exc:
        raise click.BadParameter(str(exc))


def _parse_points(ctx: click.Context, param: click.Parameter, value: tuple[str, ...]) -> list[complex]:
    points = []
    for item in value:
        parts = item.split(",")
        try:
            if len(parts) == 1:
                points.append(complex(float(parts[0]), 0.0))
            elif len(parts) == 2:
                points.append(complex(float(parts[0]), float(parts[1])))
            else:
                raise ValueError(item)
        except ValueError:
            raise click.BadParameter(f"Expected RE,IM, got: {item!r}")
    return points


def _run_options(fn: Any) -> Any:
    fn = click.option("--workers", type=int, default=None, help="Threads for mesh sampling.")(fn)
    fn = click.option("--seed", type=int, default=None, help="Seed for sample points [default: 0].")(fn)
    fn = click.option("--tol", type=float, default=None, help="Pass tolerance [default: 1e-8].")(fn)
    fn = click.option("--samples", type=int, default=None,
                      help="Sample points per identity [default: 200].")(fn)
    return fn


def _resolve(samples: Optional[int], tol: Optional[float], seed: Optional[int],
             workers: Optional[int]) -> ResolvedConfig:
    request = RunRequest(samples=samples, tol=tol, seed=seed, workers=workers)
    return resolve_config(request, FrontConfig.from_env())


def _print_summary(report: VerificationReport) -> None:
    table = Table(title=f"{report.subject}: {'PASS' if report.passed else 'FAIL'}")
    for column in ("identity", "samples", "max residual", "tolerance", "pass"):
        table.add_column(column)
    for row in report.to_frame().itertuples(index=False):
        table.add_row(row.name, str(row.samples), f"{row.max_residual:.3e}",
                      f"{row.tolerance:.1e}", "yes" if row.passed else "NO")
    if report.conditions is not None:
        table.caption = f"conditions: {report.conditions.verdict.value}"
    Console(stderr=True).print(table)


def _emit_report(report: VerificationReport, path: Optional[Path]) -> int:
    if path is not None:
        write_report(report, path)
    else:
        click.echo(dumps_stable(report.to_dict()))
    _print_summary(report)
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def _mesh_to(built: BuiltCurve, grids: list[Grid], path: Path, cfg: ResolvedConfig) -> None:
    if built.legendrian is None:
        raise SpecError(f"kind {built.kind!r} has no front to mesh")
    mesh = sample_mesh(built.legendrian, grids, truncate_norm=cfg.truncate_norm,
                       max_arg_step=cfg.max_arg_step, workers=cfg.workers)
    write_ply(mesh, path)
    click.echo(f"mesh: {mesh.n_vertices} vertices, {mesh.n_faces} faces → {path}")


# ── Group ─────────────────────────────────────────────────────────────────────

@click.group(cls=_FlatFrontGroup)
@click.option("--log-level", default=None,
              help="error, info or debug [default: FLATFRONT_LOG or info].")
@click.option("--json-logs", is_flag=True, default=False, help="Emit log lines as JSON.")
def cli(log_level: Optional[str], json_logs: bool) -> None:
    """Null curves, Legendrian curves and flat fronts in hyperbolic 3-space."""
    with _exit_codes():
        level = FrontConfig.from_env().logging_level if log_level is None else log_level
        configure_logging(level, json_output=json_logs)


@cli.group("gallery")
def gallery() -> None:
    """The four published flat-front families."""


@gallery.command("list")
def gallery_list() -> None:
    """List gallery families with their default parameters."""
    with _exit_codes():
        table = Table(title="flatfront gallery")
        table.add_column("name")
        table.add_column("defaults")
        table.add_column("finite punctures")
        for name in gallery_names():
            entry = build_entry(name)
            defaults = ", ".join(f"{k}={v:g}" for k, v in entry.params.items())
            table.add_row(name, defaults, str(len(entry.finite_punctures)))
        Console().print(table)


@gallery.command("build")
@click.argument("name")
@click.option("--param", "params", multiple=True, callback=_parse_params,
              help="Family parameter as name=value (repeatable).")
@click.option("--mesh", "mesh_path", type=click.Path(path_type=Path), default=None,
              help="Write the front mesh to this PLY file.")
@click.option("--report", "report_path", type=click.Path(path_type=Path), default=None,
              help="Verify the entry and write the report to this JSON file.")
@click.option("--grid", callback=_parse_grid, default=None,
              help="Single annulus rmin,rmax,nr,ntheta instead of the entry's plan.")
@_run_options
def gallery_build(
    name: str,
    params: dict[str, float],
    mesh_path: Optional[Path],
    report_path: Optional[Path],
    grid: Optional[Grid],
    samples: Optional[int],
    tol: Optional[float],
    seed: Optional[int],
    workers: Optional[int],
) -> None:
    """Build gallery entry NAME, then mesh and/or verify it."""
    code = EXIT_OK
    with _exit_codes():
        cfg = _resolve(samples, tol, seed, workers)
        built = build_curve(gallery_spec(name, params))
        entry = built.entry
        assert entry is not None
        if mesh_path is None and report_path is None:
            click.echo(dumps_stable({
                "name": entry.name,
                "params": dict(entry.params),
                "finite_punctures": list(entry.finite_punctures),
                "loops": [d.label for d in entry.deck_loops()],
                "statements": dict(entry.statements),
            }))
        if mesh_path is not None:
            _mesh_to(built, [grid] if grid is not None else entry.mesh_plan(), mesh_path, cfg)
        if report_path is not None:
            report = run_verification(built, cfg)
            code = _emit_report(report, report_path)
    sys.exit(code)


@cli.command("verify")
@click.option("--spec", "spec_path", required=True, type=click.Path(path_type=Path),
              help="Curve-spec JSON file.")
@click.option("--report", "report_path", type=click.Path(path_type=Path), default=None,
              help="Write the report here instead of stdout.")
@_run_options
def verify(
    spec_path: Path,
    report_path: Optional[Path],
    samples: Optional[int],
    tol: Optional[float],
    seed: Optional[int],
    workers: Optional[int],
) -> None:
    """Run every identity suite that applies to the curve spec."""
    with _exit_codes():
        cfg = _resolve(samples, tol, seed, workers)
        built = build_curve(load_spec(spec_path))
        report = run_verification(built, cfg)
        code = _emit_report(report, report_path)
    sys.exit(code)


@cli.command("sample")
@click.option("--spec", "spec_path", required=True, type=click.Path(path_type=Path),
              help="Curve-spec JSON file.")
@click.option("--point", "points", multiple=True, callback=_parse_points,
              help="Evaluation point RE,IM (repeatable).")
def sample(spec_path: Path, points: list[complex]) -> None:
    """Print one JSON row per point with the curve and front data there."""
    with _exit_codes():
        cfg = _resolve(None, None, None, None)
        built = build_curve(load_spec(spec_path))
        click.echo(dumps_stable(sample_rows(built, points, cfg)))


@cli.command("mesh")
@click.option("--spec", "spec_path", required=True, type=click.Path(path_type=Path),
              help="Curve-spec JSON file of a Legendrian or gallery kind.")
@click.option("--mesh", "mesh_path", required=True, type=click.Path(path_type=Path),
              help="Output PLY file.")
@click.option("--grid", callback=_parse_grid, default=None,
              help="Annulus rmin,rmax,nr,ntheta around 0 (gallery specs default to their plan).")
@click.option("--workers", type=int, default=None, help="Threads for mesh sampling.")
def mesh(spec_path: Path, mesh_path: Path, grid: Optional[Grid], workers: Optional[int]) -> None:
    """Mesh the flat front of a curve spec into a PLY file."""
    with _exit_codes():
        cfg = _resolve(None, None, None, workers)
        built = build_curve(load_spec(spec_path))
        if grid is not None:
            grids = [grid]
        elif built.entry is not None:
            grids = built.entry.mesh_plan()
        else:
            raise SpecError("--grid is required for non-gallery specs")
        _mesh_to(built, grids, mesh_path, cfg)


if __name__ == "__main__":
    cli()
