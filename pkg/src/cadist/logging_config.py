"""Structured logging configuration for cadist.

Logs always go to stderr: stdout carries command output, CSV tables and
failure records, and must stay parseable.
"""

from __future__ import annotations

import logging
import os
import sys
from typing import Any

from pythonjsonlogger import jsonlogger

from cadist import __version__
from cadist.exceptions import ConfigurationError

# Names passed through ``extra=`` by the command layer and the builders.
CONTEXT_FIELDS = ("structure", "model", "subcommand")

JSON_FORMAT = "%(timestamp)s %(level)s %(logger)s %(message)s"
TEXT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s%(context)s"


def _context(record: logging.LogRecord) -> dict[str, Any]:
    return {f: getattr(record, f) for f in CONTEXT_FIELDS if hasattr(record, f)}


class CustomJsonFormatter(jsonlogger.JsonFormatter):  # type: ignore
    """JSON formatter that adds level, logger, timestamp and run context."""

    def add_fields(
        self,
        log_record: dict[str, Any],
        record: logging.LogRecord,
        message_dict: dict[str, Any],
    ) -> None:
        """Add custom fields to log record.

        Args:
            log_record: The log record dictionary to modify
            record: The original LogRecord
            message_dict: Additional message data
        """
        super().add_fields(log_record, record, message_dict)
        log_record.update(
            level=record.levelname,
            logger=record.name,
            timestamp=self.formatTime(record, self.datefmt),
            version=__version__,
        )
        log_record.update(_context(record))


class ContextTextFormatter(logging.Formatter):
    """Human-readable lines with the run context appended as ``[key=value ...]``."""

    def format(self, record: logging.LogRecord) -> str:
        ctx = _context(record)
        record.context = (
            " [" + " ".join(f"{k}={v}" for k, v in ctx.items()) + "]" if ctx else ""
        )
        return super().format(record)


def _parse_level(level: str | int) -> int:
    if isinstance(level, int):
        return level
    value = logging.getLevelName(level.upper())
    if not isinstance(value, int):
        raise ConfigurationError(f"Unknown log level {level!r}", {"level": level})
    return value


def setup_logging(
    level: str | int = "WARNING",
    json_format: bool = False,
    log_file: str | None = None,
) -> None:
    """Configure the root logger, replacing any handlers it already has.

    Args:
        level: Logging level name or number
        json_format: If True, use JSON lines. If False, use human-readable lines
        log_file: Optional file path that receives the same records

    Raises:
        ConfigurationError: If the level name is unknown
    """
    numeric = _parse_level(level)
    formatter: logging.Formatter = (
        CustomJsonFormatter(JSON_FORMAT)
        if json_format
        else ContextTextFormatter(TEXT_FORMAT, datefmt="%Y-%m-%d %H:%M:%S")
    )

    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)
    for handler in handlers:
        handler.setLevel(numeric)
        handler.setFormatter(formatter)
        root_logger.addHandler(handler)


def configure_from_env() -> None:
    """Configure logging from environment variables.

    Environment variables:
        CADIST_LOG_LEVEL: Logging level (default: WARNING)
        CADIST_LOG_FORMAT: "json" or "text" (default: text)
        CADIST_LOG_FILE: Optional log file path
    """
    fmt = os.getenv("CADIST_LOG_FORMAT", "text").lower()
    if fmt not in ("json", "text"):
        raise ConfigurationError(f"CADIST_LOG_FORMAT must be 'json' or 'text', got {fmt!r}")
    setup_logging(
        level=os.getenv("CADIST_LOG_LEVEL", "WARNING"),
        json_format=fmt == "json",
        log_file=os.getenv("CADIST_LOG_FILE"),
    )
