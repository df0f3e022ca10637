"""
Run Metrics
Module ID: VDP-MON-METRICS-001
Version: 0.1.0

Operation counters, gauges and wall-clock timers for sweeps, enumerations
and studies. A metric is identified by its dotted name plus an optional
label set; the stage timer of the backward sweep is "dp.sweep.stage"
labelled with {"stage": "<i>"}.

Timings feed the logs only. Run summaries never include them, so reruns
with different worker counts stay byte-identical.
"""

import threading
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from src.monitoring.logging import get_logger

logger = get_logger(__name__)

Labels = Optional[Mapping[str, str]]
MetricKey = Tuple[str, FrozenSet[Tuple[str, str]]]

STAGE_TIMER = "dp.sweep.stage"


def _key(name: str, labels: Labels = None) -> MetricKey:
    return name, frozenset((labels or {}).items())


@dataclass
class TimerSeries:
    """Durations recorded under one key, oldest first, capped at max_samples."""
    max_samples: int
    samples: List[float] = field(default_factory=list)
    total: float = 0.0
    count: int = 0

    def add(self, seconds: float) -> None:
        self.samples.append(seconds)
        if len(self.samples) > self.max_samples:
            del self.samples[0]
        self.total += seconds
        self.count += 1

    def stats(self) -> Dict[str, float]:
        ordered = sorted(self.samples)
        return {
            "count": self.count,
            "sum": self.total,
            "min": ordered[0],
            "max": ordered[-1],
            "mean": self.total / self.count,
            "p50": ordered[len(ordered) // 2],
        }


class MetricsCollector:
    """Thread-safe counters, gauges and timers keyed by (name, labels)."""

    def __init__(self, max_samples: int = 1000):
        self.max_samples = max_samples
        self._lock = threading.RLock()
        self._counters: Dict[MetricKey, float] = defaultdict(float)
        self._gauges: Dict[MetricKey, float] = {}
        self._timers: Dict[MetricKey, TimerSeries] = {}

    def counter(self, name: str, value: float = 1, labels: Labels = None) -> None:
        with self._lock:
            self._counters[_key(name, labels)] += value

    def gauge(self, name: str, value: float, labels: Labels = None) -> None:
        with self._lock:
            self._gauges[_key(name, labels)] = value

    def timer(self, name: str, seconds: float, labels: Labels = None) -> None:
        key = _key(name, labels)
        with self._lock:
            series = self._timers.get(key)
            if series is None:
                series = self._timers[key] = TimerSeries(self.max_samples)
            series.add(seconds)

    def context_timer(self, name: str, labels: Labels = None) -> "TimerContext":
        return TimerContext(self, name, labels)

    def record_counts(self, counts: Mapping[str, int], prefix: str = "dp") -> None:
        """Add an operation tally (e.g. OpCounts.to_dict()) to the counters under prefix."""
        with self._lock:
            for name, value in counts.items():
                self._counters[_key(f"{prefix}.{name}")] += value

    def get_counter(self, name: str, labels: Labels = None) -> Optional[float]:
        with self._lock:
            return self._counters.get(_key(name, labels))

    def get_gauge(self, name: str, labels: Labels = None) -> Optional[float]:
        with self._lock:
            return self._gauges.get(_key(name, labels))

    def get_timer_stats(self, name: str, labels: Labels = None) -> Optional[Dict[str, float]]:
        with self._lock:
            series = self._timers.get(_key(name, labels))
            return series.stats() if series else None

    def counts(self, prefix: str = "dp") -> Dict[str, int]:
        """Unlabelled counters under prefix, with the prefix stripped."""
        start = f"{prefix}."
        with self._lock:
            return {
                name[len(start):]: int(value)
                for (name, labels), value in sorted(self._counters.items())
                if name.startswith(start) and not labels
            }

    def stage_times(self, name: str = STAGE_TIMER) -> Dict[int, float]:
        """Total seconds per stage for a stage-labelled timer."""
        with self._lock:
            times = {
                int(dict(labels)["stage"]): series.total
                for (key_name, labels), series in self._timers.items()
                if key_name == name and "stage" in dict(labels)
            }
        return dict(sorted(times.items()))

    def snapshot(self) -> Dict[str, Dict[str, object]]:
        """All metrics with keys rendered as name{k="v",...}."""
        with self._lock:
            return {
                "counters": {_render(k): v for k, v in self._counters.items()},
                "gauges": {_render(k): v for k, v in self._gauges.items()},
                "timers": {_render(k): s.stats() for k, s in self._timers.items()},
            }

    def reset(self) -> None:
        with self._lock:
            self._counters.clear()
            self._gauges.clear()
            self._timers.clear()


def _render(key: MetricKey) -> str:
    name, labels = key
    if not labels:
        return name
    return name + "{" + ",".join(f'{k}="{v}"' for k, v in sorted(labels)) + "}"


class TimerContext:
    """Times a with-block into a collector."""

    def __init__(self, collector: MetricsCollector, name: str, labels: Labels = None):
        self.collector = collector
        self.name = name
        self.labels = dict(labels or {})
        self.seconds: Optional[float] = None
        self._start = 0.0

    def __enter__(self) -> "TimerContext":
        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.seconds = time.perf_counter() - self._start
        self.collector.timer(self.name, self.seconds, self.labels)


def log_stage_times(collector: MetricsCollector, operation: str) -> None:
    times = collector.stage_times()
    if times:
        logger.performance(operation, sum(times.values()), stage_seconds=times)


_metrics_collector: Optional[MetricsCollector] = None
_collector_lock = threading.Lock()


def get_metrics_collector() -> MetricsCollector:
    """Process-wide collector used by the CLI."""
    global _metrics_collector
    with _collector_lock:
        if _metrics_collector is None:
            _metrics_collector = MetricsCollector()
        return _metrics_collector
