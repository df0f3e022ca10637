"""
Instrumented Counts
Module ID: VDP-COST-INSTRUMENT-001
Version: 0.1.0

Measured operation counts of a real solve against the cost model.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from src.costmodel.model import CostParams, predict_recursive, predicted_counts
from src.dp.solver import solve
from src.monitoring.logging import get_logger
from src.monitoring.metrics import MetricsCollector
from src.problem.model import VolterraProblem

logger = get_logger(__name__)


@dataclass
class CounterComparison:
    counter: str
    predicted: int
    measured: int

    @property
    def match(self) -> bool:
        return self.predicted == self.measured

    def to_dict(self) -> Dict[str, Any]:
        return {"counter": self.counter, "predicted": self.predicted, "measured": self.measured, "match": self.match}


@dataclass
class InstrumentReport:
    problem: str
    N: int
    Q: int
    M: int
    band: bool
    rows: List[CounterComparison] = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return all(r.match for r in self.rows)

    def row(self, counter: str) -> CounterComparison:
        for r in self.rows:
            if r.counter == counter:
                return r
        raise KeyError(counter)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "settings": {"problem": self.problem, "N": self.N, "Q": self.Q, "M": self.M, "band": self.band},
            "counters": [r.to_dict() for r in self.rows],
            "all_match": self.all_match,
        }


def instrument_and_compare(
    p: VolterraProblem,
    N: int,
    Q: int,
    use_band: bool = True,
    *,
    workers: Optional[int] = None,
    metrics: Optional[MetricsCollector] = None,
) -> InstrumentReport:
    """Solve with counters on and compare every counter with its prediction."""
    metrics = metrics or MetricsCollector()
    report = solve(p, N, Q, use_band, workers=workers, metrics=metrics)
    M = report.M

    predicted = predicted_counts(N, M)
    # in the counting configuration the executed cost is the Phi evaluation count
    executed = predict_recursive(CostParams.counting(N, M)).executed_total
    if executed != predicted.phi_evals:
        logger.warning(f"Recursion predicts {executed} Phi evaluations, direct count {predicted.phi_evals}")

    measured = report.counts.to_dict()
    rows = [
        CounterComparison("phi_evals", int(executed), measured["phi_evals"]),
        CounterComparison("f_evals", predicted.f_evals, measured["f_evals"]),
        CounterComparison("x0_evals", predicted.x0_evals, measured["x0_evals"]),
        CounterComparison("min_comparisons", predicted.min_comparisons, measured["min_comparisons"]),
    ]
    tallied = metrics.counts("dp")
    for r in rows:
        if tallied.get(r.counter, 0) != r.measured:
            logger.warning(f"Metrics counter dp.{r.counter} disagrees with the sweep tally")

    result = InstrumentReport(problem=p.name, N=N, Q=report.Q, M=M, band=use_band, rows=rows)
    logger.info(f"Instrumented {p.name} N={N} M={M}: all counters match = {result.all_match}")
    return result
