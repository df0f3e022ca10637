"""
Structured Logging Module
Module ID: VDP-MON-LOGGING-001
Version: 0.1.0

One JSON object per record on standard error, so summary files written by
the CLI stay clean. Every record carries the LogContext of its thread:
run_id and command are set once per run with set_global_context(), while
operation and stage are pushed with ``logger.context(...)`` around sweeps,
enumerations and studies.
"""

import json
import logging
import sys
import threading
import uuid
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, Iterator, Optional


class LogLevel(Enum):
    DEBUG = logging.DEBUG
    INFO = logging.INFO
    WARNING = logging.WARNING
    ERROR = logging.ERROR
    CRITICAL = logging.CRITICAL

    @classmethod
    def from_name(cls, name: str) -> "LogLevel":
        """Case-insensitive lookup; raises KeyError for unknown names."""
        return cls[name.upper()]


@dataclass
class LogContext:
    run_id: str = field(default_factory=lambda: uuid.uuid4().hex[:12])
    component: Optional[str] = None
    operation: Optional[str] = None
    stage: Optional[int] = None
    tags: Dict[str, str] = field(default_factory=dict)

    def as_fields(self) -> Dict[str, Any]:
        return {k: v for k, v in asdict(self).items() if v is not None and v != {}}


# LogRecord attributes that never become extra JSON fields
_RECORD_ATTRS = frozenset(vars(logging.LogRecord("", 0, "", 0, "", (), None))) | {
    "context", "message", "asctime", "taskName",
}


class StructuredFormatter(logging.Formatter):
    """Renders a record, its context and its extra fields as one JSON line."""

    def format(self, record: logging.LogRecord) -> str:
        entry: Dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
            "thread": record.threadName,
        }
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)

        context = getattr(record, "context", None)
        if isinstance(context, LogContext) and context.as_fields():
            entry["context"] = context.as_fields()

        entry.update((k, v) for k, v in vars(record).items() if k not in _RECORD_ATTRS)
        return json.dumps(entry, default=str)


_thread_state = threading.local()
_global_lock = threading.Lock()
_global_context = LogContext()


def _current() -> Optional[LogContext]:
    return getattr(_thread_state, "context", None)


class StructuredLogger:
    """
    Thin wrapper over a stdlib logger that stamps each record with the
    calling thread's LogContext. Levels and handlers come from the stdlib
    logging tree (see configure_logging).
    """

    def __init__(self, name: str):
        self.name = name
        self.logger = logging.getLogger(name)

    def get_context(self) -> LogContext:
        local = _current()
        if local is not None:
            return local
        with _global_lock:
            return replace(_global_context, component=_global_context.component or self.name)

    @contextmanager
    def context(self, **updates: Any) -> Iterator[LogContext]:
        """Temporarily override context fields in this thread."""
        previous = _current()
        base = self.get_context()
        known = {k: v for k, v in updates.items() if hasattr(base, k)}
        _thread_state.context = replace(base, **known)
        try:
            yield _thread_state.context
        finally:
            if previous is None:
                del _thread_state.context
            else:
                _thread_state.context = previous

    def _log(self, level: int, message: str, exc_info: bool = False, **fields: Any) -> None:
        if not self.logger.isEnabledFor(level):
            return
        record = self.logger.makeRecord(
            self.name, level, "", 0, message, (), sys.exc_info() if exc_info else None
        )
        record.context = self.get_context()
        for key, value in fields.items():
            if key not in _RECORD_ATTRS:
                setattr(record, key, value)
        self.logger.handle(record)

    def debug(self, message: str, **fields: Any) -> None:
        self._log(logging.DEBUG, message, **fields)

    def info(self, message: str, **fields: Any) -> None:
        self._log(logging.INFO, message, **fields)

    def warning(self, message: str, **fields: Any) -> None:
        self._log(logging.WARNING, message, **fields)

    def error(self, message: str, **fields: Any) -> None:
        self._log(logging.ERROR, message, **fields)

    def exception(self, message: str, **fields: Any) -> None:
        self._log(logging.ERROR, message, exc_info=True, **fields)

    def performance(self, operation: str, duration: float, **fields: Any) -> None:
        self.info(
            f"Performance: {operation} took {duration:.3f}s",
            perf_operation=operation,
            perf_duration=duration,
            **fields,
        )

    def certificate(self, claim: str, is_valid: bool, skipped: bool = False, **fields: Any) -> None:
        """INFO when the certificate holds, WARNING when skipped, ERROR when it fails."""
        if skipped:
            level, outcome = logging.WARNING, "skipped"
        else:
            level, outcome = (logging.INFO, "holds") if is_valid else (logging.ERROR, "FAILED")
        self._log(
            level,
            f"Certificate: {claim} {outcome}",
            certificate_claim=claim,
            certificate_valid=is_valid,
            certificate_skipped=skipped,
            **fields,
        )


_loggers: Dict[str, StructuredLogger] = {}
_loggers_lock = threading.Lock()


def get_logger(name: str) -> StructuredLogger:
    with _loggers_lock:
        if name not in _loggers:
            _loggers[name] = StructuredLogger(name)
        return _loggers[name]


def set_global_context(**fields: Any) -> None:
    """Set run-wide context fields seen by every thread without a local override."""
    global _global_context
    with _global_lock:
        known = {k: v for k, v in fields.items() if hasattr(_global_context, k)}
        _global_context = replace(_global_context, **known)


def configure_logging(
    level: LogLevel = LogLevel.WARNING,
    format_json: bool = True,
    include_console: bool = True,
    file_path: Optional[str] = None,
) -> None:
    """Reset root handlers: stderr console and an optional file, JSON or plain text."""
    root = logging.getLogger()
    root.setLevel(level.value)
    root.handlers.clear()

    formatter: logging.Formatter = (
        StructuredFormatter() if format_json
        else logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s")
    )
    handlers = []
    if include_console:
        handlers.append(logging.StreamHandler(sys.stderr))
    if file_path:
        handlers.append(logging.FileHandler(file_path))
    for handler in handlers:
        handler.setFormatter(formatter)
        root.addHandler(handler)
