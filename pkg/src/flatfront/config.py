"""
config.py – Central configuration using environment variables and/or explicit overrides.
All settings are immutable after construction (frozen dataclass).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

from dotenv import load_dotenv

from flatfront import constants

load_dotenv()

_LOG_LEVELS = {"error": "ERROR", "info": "INFO", "debug": "DEBUG"}


def _env_float(name: str, default: float) -> float:
    return float(os.getenv(name, repr(default)))


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


@dataclass(frozen=True)
class FrontConfig:
    """
    Immutable numerical configuration.

    Parameters
    ----------
    tol:
        Pass/fail tolerance for identity checks (``FLATFRONT_TOL``).
    samples:
        Number of random sample points per identity (``FLATFRONT_SAMPLES``).
    seed:
        Seed for every random draw (``FLATFRONT_SEED``).
    clearance_factor:
        Path clearance relative to the path's bounding-box diameter (``FLATFRONT_CLEARANCE``).
    quad_abs_tol:
        Absolute quadrature target for periods and path integrals.
    quad_max_evals:
        Hard cap on integrand evaluations per path integral.
    period_tol:
        Residual allowed when matching a period to pi*i*Z.
    max_arg_step:
        Largest arg change of a log-type argument accepted in one continuation step.
    truncate_norm:
        Ball norm at which end grading stops.
    workers:
        Thread-pool size for mesh sampling (``FLATFRONT_WORKERS``).
    log_level:
        One of error, info, debug (``FLATFRONT_LOG``); unknown values fall back to info.
    """

    tol: float = field(default_factory=lambda: _env_float("FLATFRONT_TOL", constants.DEFAULT_TOL))
    samples: int = field(default_factory=lambda: _env_int("FLATFRONT_SAMPLES", 200))
    seed: int = field(default_factory=lambda: _env_int("FLATFRONT_SEED", 0))
    clearance_factor: float = field(
        default_factory=lambda: _env_float("FLATFRONT_CLEARANCE", constants.CLEARANCE_FACTOR)
    )
    quad_abs_tol: float = constants.QUAD_ABS_TOL
    quad_max_evals: int = constants.QUAD_MAX_EVALS
    period_tol: float = constants.PERIOD_TOL
    max_arg_step: float = constants.MAX_ARG_STEP
    truncate_norm: float = constants.TRUNCATE_NORM
    workers: int = field(default_factory=lambda: _env_int("FLATFRONT_WORKERS", 1))
    log_level: str = field(default_factory=lambda: os.getenv("FLATFRONT_LOG", "info"))

    def __post_init__(self) -> None:
        if self.tol <= 0:
            raise ValueError("tol must be positive.")
        if self.samples < 1:
            raise ValueError("samples must be at least 1.")
        if not 0 < self.max_arg_step < math.pi:
            raise ValueError("max_arg_step must lie in (0, pi).")
        if not 0 < self.truncate_norm < 1:
            raise ValueError("truncate_norm must lie in (0, 1).")
        if self.workers < 1:
            raise ValueError("workers must be at least 1.")

    @property
    def logging_level(self) -> str:
        """Python logging level name for ``log_level``."""
        return _LOG_LEVELS.get(self.log_level.strip().lower(), "INFO")

    @classmethod
    def from_env(cls) -> "FrontConfig":
        """Construct config entirely from environment variables."""
        return cls()
