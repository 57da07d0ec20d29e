"""
config_resolver.py – Unified precedence for RunRequest vs FrontConfig.

Rule: RunRequest fields override FrontConfig defaults whenever they are set.
      This applies to: samples, tol, seed, workers.

Use ``resolve_config(request, config)`` to get a single ``ResolvedConfig``
object that all downstream components (verification suites, mesh sampling)
consume. Never read from request and config separately in business logic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from flatfront.config import FrontConfig
from flatfront.types import RunRequest


@dataclass(frozen=True)
class ResolvedConfig:
    """
    Merged view of FrontConfig + RunRequest with clear precedence.

    Attributes
    ----------
    samples, tol, seed, workers:
        Per-run values (request first, then config).
    clearance_factor, quad_abs_tol, quad_max_evals, period_tol, max_arg_step, truncate_norm:
        Numerical settings; always from FrontConfig.
    """

    samples: int
    tol: float
    seed: int
    workers: int
    clearance_factor: float
    quad_abs_tol: float
    quad_max_evals: int
    period_tol: float
    max_arg_step: float
    truncate_norm: float

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError("samples must be at least 1.")
        if self.tol <= 0:
            raise ValueError("tol must be positive.")
        if self.workers < 1:
            raise ValueError("workers must be at least 1.")


def resolve_config(
    request: Optional[RunRequest] = None,
    config: Optional[FrontConfig] = None,
) -> ResolvedConfig:
    """
    Merge RunRequest overrides on top of FrontConfig defaults.

    Precedence: RunRequest > FrontConfig > environment.

    Parameters
    ----------
    request:
        Per-invocation overrides (CLI flags).
    config:
        Process-wide configuration; read from the environment when omitted.

    Returns
    -------
    ResolvedConfig with one authoritative value per setting.
    """
    request = request or RunRequest()
    config = config or FrontConfig.from_env()

    def pick(value, default):  # type: ignore[no-untyped-def]
        return default if value is None else value

    return ResolvedConfig(
        samples=int(pick(request.samples, config.samples)),
        tol=float(pick(request.tol, config.tol)),
        seed=int(pick(request.seed, config.seed)),
        workers=int(pick(request.workers, config.workers)),
        clearance_factor=config.clearance_factor,
        quad_abs_tol=config.quad_abs_tol,
        quad_max_evals=config.quad_max_evals,
        period_tol=config.period_tol,
        max_arg_step=config.max_arg_step,
        truncate_norm=config.truncate_norm,
    )
