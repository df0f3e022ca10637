"""
Monitoring Module
Module ID: VDP-MON-001
Version: 0.1.0

Structured logging and run metrics.
"""

from src.monitoring.logging import (
    LogContext,
    LogLevel,
    StructuredFormatter,
    StructuredLogger,
    configure_logging,
    get_logger,
    set_global_context,
)
from src.monitoring.metrics import (
    MetricsCollector,
    STAGE_TIMER,
    TimerContext,
    get_metrics_collector,
    log_stage_times,
)

__all__ = [
    'LogContext',
    'LogLevel',
    'StructuredFormatter',
    'StructuredLogger',
    'configure_logging',
    'get_logger',
    'set_global_context',
    'MetricsCollector',
    'STAGE_TIMER',
    'TimerContext',
    'get_metrics_collector',
    'log_stage_times',
]
