"""
hashing.py – Fingerprints tying a verification report to its exact inputs.

Digests are taken over ``dumps_stable`` output, so complex numbers, float
formatting and key order never change a fingerprint between runs.
"""

from __future__ import annotations

import hashlib
from collections.abc import Mapping
from typing import Any

from flatfront.utils.io import dumps_stable

SHORT_LENGTH = 12


def digest(obj: Any) -> str:
    """SHA-256 hex digest of the stable JSON form of ``obj``."""
    return hashlib.sha256(dumps_stable(obj).encode("utf-8")).hexdigest()


def spec_fingerprint(spec: Mapping[str, Any], *, seed: int, samples: int, tol: float) -> str:
    """
    Fingerprint of a curve spec together with every setting that changes its report.

    Parameters
    ----------
    spec:
        JSON-compatible curve-spec dictionary.
    seed, samples:
        Determine the sample points.
    tol:
        Determines which records pass.

    Returns
    -------
    str (64-char hex)
    """
    return digest({"spec": dict(spec), "seed": seed, "samples": samples, "tol": tol})


def short(fingerprint: str) -> str:
    return fingerprint[:SHORT_LENGTH]
