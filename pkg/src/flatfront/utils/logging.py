"""
logging.py – Logger setup for the ``flatfront`` namespace.

Library modules log through ``logging.getLogger(__name__)``; the CLI calls
``configure_logging`` once. Lines go to stderr because stdout carries the JSON
payloads of ``verify`` and ``sample``. In JSON mode every line is one stable
JSON object, and records raised from a ``FlatFrontError`` carry its ``code``.
"""

from __future__ import annotations

import datetime
import logging
import sys

from flatfront.utils.io import dumps_stable

NAMESPACE = "flatfront"

_LEVELS: dict[str, int] = {
    "error": logging.ERROR,
    "warning": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}

_PLAIN_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"


def parse_level(level: str) -> int:
    """Numeric level for ``error``, ``warning``, ``info`` or ``debug``; anything else is INFO."""
    return _LEVELS.get(level.strip().lower(), logging.INFO)


def configure_logging(level: str = "info", json_output: bool = False) -> None:
    """
    Attach a single stderr handler to the ``flatfront`` logger.

    Calling it again replaces the handler, so repeated CLI invocations in one
    process do not duplicate lines.

    Parameters
    ----------
    level:
        ``error``, ``warning``, ``info`` or ``debug`` (case-insensitive).
    json_output:
        Emit one JSON object per line instead of the plain format.
    """
    handler = logging.StreamHandler(sys.stderr)
    if json_output:
        handler.setFormatter(_JsonFormatter())
    else:
        handler.setFormatter(logging.Formatter(_PLAIN_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))

    root = logging.getLogger(NAMESPACE)
    root.setLevel(parse_level(level))
    root.handlers.clear()
    root.addHandler(handler)
    root.propagate = False


def get_logger(name: str) -> logging.Logger:
    """Logger under the ``flatfront`` namespace for ``name`` (usually ``__name__``)."""
    if name != NAMESPACE and not name.startswith(NAMESPACE + "."):
        name = f"{NAMESPACE}.{name}"
    return logging.getLogger(name)


class _JsonFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "ts": datetime.datetime.fromtimestamp(record.created, datetime.timezone.utc).isoformat(),
            "level": record.levelname.lower(),
            "logger": record.name,
            "msg": record.getMessage(),
        }
        if record.exc_info and record.exc_info[1] is not None:
            exc = record.exc_info[1]
            code = getattr(exc, "code", None)
            if isinstance(code, str):
                payload["code"] = code
            payload["exc"] = self.formatException(record.exc_info)
        return dumps_stable(payload)
