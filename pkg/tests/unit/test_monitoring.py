"""
Unit Tests for Structured Logging and Metrics
Module ID: VDP-TEST-MON-001
Version: 0.1.0
"""

import json
import logging
import threading

import pytest

from src.monitoring import (
    LogContext,
    LogLevel,
    STAGE_TIMER,
    MetricsCollector,
    StructuredFormatter,
    get_logger,
)


def _record(message: str = "hello", **extra) -> logging.LogRecord:
    record = logging.LogRecord("vdp.test", logging.INFO, __file__, 1, message, (), None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


@pytest.mark.unit
class TestStructuredFormatter:

    def test_json_fields(self):
        entry = json.loads(StructuredFormatter().format(_record()))
        assert entry["message"] == "hello"
        assert entry["level"] == "INFO"
        assert entry["logger"] == "vdp.test"

    def test_context_and_extras(self):
        record = _record(context=LogContext(run_id="abc", operation="solve", stage=2), counts={"f_evals": 3})
        entry = json.loads(StructuredFormatter().format(record))
        assert entry["context"] == {"run_id": "abc", "operation": "solve", "stage": 2}
        assert entry["counts"] == {"f_evals": 3}


@pytest.mark.unit
class TestStructuredLogger:

    def test_level_names(self):
        assert LogLevel.from_name("debug") is LogLevel.DEBUG
        with pytest.raises(KeyError):
            LogLevel.from_name("LOUD")

    def test_context_is_restored(self):
        logger = get_logger("vdp.test.context")
        before = logger.get_context()
        with logger.context(stage=4, operation="backward_sweep") as ctx:
            assert ctx.stage == 4
            assert logger.get_context().operation == "backward_sweep"
        assert logger.get_context() == before

    def test_context_is_thread_local(self):
        logger = get_logger("vdp.test.threads")
        seen = []
        with logger.context(stage=1):
            worker = threading.Thread(target=lambda: seen.append(logger.get_context().stage))
            worker.start()
            worker.join()
        assert seen == [None]

    def test_certificate_levels(self, caplog):
        logger = get_logger("vdp.test.cert")
        with caplog.at_level(logging.INFO, logger="vdp.test.cert"):
            logger.certificate("values agree", True)
            logger.certificate("values agree", False)
            logger.certificate("states bounded", False, skipped=True)
        records = [r for r in caplog.records if r.name == "vdp.test.cert"]
        assert [r.levelno for r in records] == [logging.INFO, logging.ERROR, logging.WARNING]
        assert records[1].certificate_valid is False
        assert records[2].certificate_skipped is True
        assert records[2].getMessage().endswith("skipped")


@pytest.mark.unit
class TestMetricsCollector:

    def test_counters_accumulate(self):
        metrics = MetricsCollector()
        metrics.counter("dp.phi_evals", 4)
        metrics.counter("dp.phi_evals", 6)
        assert metrics.get_counter("dp.phi_evals") == 10
        assert metrics.get_counter("dp.f_evals") is None

    def test_labelled_timer(self):
        metrics = MetricsCollector()
        with metrics.context_timer("dp.sweep.stage", {"stage": "1"}):
            pass
        stats = metrics.get_timer_stats("dp.sweep.stage", {"stage": "1"})
        assert stats["count"] == 1
        assert stats["min"] >= 0.0
        assert metrics.get_timer_stats("dp.sweep.stage", {"stage": "2"}) is None

    def test_reset(self):
        metrics = MetricsCollector()
        metrics.gauge("oracle.gap", 0.25)
        assert metrics.get_gauge("oracle.gap") == 0.25
        metrics.reset()
        assert metrics.snapshot()["gauges"] == {}

    def test_record_counts_and_stage_times(self):
        metrics = MetricsCollector()
        metrics.record_counts({"phi_evals": 21, "f_evals": 21})
        metrics.record_counts({"phi_evals": 3})
        metrics.counter("dp.phi_evals", 5, {"stage": "0"})
        assert metrics.counts("dp") == {"f_evals": 21, "phi_evals": 24}
        for stage in (1, 0, 1):
            metrics.timer(STAGE_TIMER, 0.5, {"stage": str(stage)})
        assert metrics.stage_times() == {0: 0.5, 1: 1.0}

    def test_snapshot_renders_labels(self):
        metrics = MetricsCollector()
        metrics.counter("oracle.blocks", 2, {"worker": "1", "cap": "80"})
        assert metrics.snapshot()["counters"] == {'oracle.blocks{cap="80",worker="1"}': 2}
