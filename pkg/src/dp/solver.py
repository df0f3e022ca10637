"""
Solve Pipeline
Module ID: VDP-DP-SOLVER-001
Version: 0.1.0

discretize -> quantize -> backward sweep -> forward reconstruct -> forward
solve -> discrete cost, with the value/cost agreement check and the
relevant-set watch.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from src.core.constants import ORACLE_ABSOLUTE_TOL, VALUE_RELATIVE_TOL
from src.core.errors import InvariantViolation, RejectedInputError
from src.discretize.dynamics import (
    DiscreteControl,
    DiscreteProblem,
    Trajectory,
    discrete_cost,
    discretize,
    forward_solve,
)
from src.dp.constraints import ConstraintBand, band_for
from src.dp.counts import OpCounts
from src.dp.quantization import Quantization, quantize
from src.dp.reconstruct import control_indices, forward_reconstruct
from src.dp.sweep import ValueTable, backward_sweep
from src.monitoring.logging import get_logger
from src.monitoring.metrics import MetricsCollector
from src.problem.bounds import RelevantSet, estimate_relevant_set
from src.problem.model import VolterraProblem

logger = get_logger(__name__)


@dataclass
class SolveReport:
    """Everything one solve produces."""

    problem: str
    N: int
    Q: int
    M: int
    band: bool
    value: float
    cost: float
    control: DiscreteControl
    indices: list
    trajectory: Trajectory
    counts: OpCounts
    relevant_set: Optional[RelevantSet] = None
    left_relevant_set: bool = False
    discrete_problem: Optional[DiscreteProblem] = field(default=None, repr=False)
    quantization: Optional[Quantization] = field(default=None, repr=False)
    constraint: Optional[ConstraintBand] = field(default=None, repr=False)
    table: Optional[ValueTable] = field(default=None, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "cost": self.cost,
            "control": self.control.to_list(),
            "control_indices": list(self.indices),
            "trajectory": self.trajectory.to_list(),
            "counts": self.counts.to_dict(),
            "relevant_set": self.relevant_set.to_dict() if self.relevant_set else None,
            "left_relevant_set": self.left_relevant_set,
            "settings": {
                "problem": self.problem,
                "N": self.N,
                "Q": self.Q,
                "M": self.M,
                "band": self.band,
            },
        }


def values_agree(a: float, b: float, rel: float, abs_tol: float = 0.0) -> bool:
    return math.isclose(a, b, rel_tol=rel, abs_tol=abs_tol)


def _watch_relevant_set(p: VolterraProblem, traj: Trajectory) -> tuple:
    try:
        relevant = estimate_relevant_set(p)
    except RejectedInputError as e:
        logger.warning(f"No relevant-set estimate for {p.name}: {e.message}")
        return None, False
    left = not relevant.contains(traj.states)
    if left:
        logger.warning(
            f"Trajectory leaves the relevant set: max |x| exceeds radius by {relevant.max_excess(traj.states):.3e}",
            radius=relevant.radius,
            method=relevant.method,
        )
    return relevant, left


def solve(
    p: VolterraProblem,
    N: int,
    Q: int,
    use_band: bool = True,
    *,
    workers: Optional[int] = None,
    chunk_size: Optional[int] = None,
    memory_budget: Optional[int] = None,
    metrics: Optional[MetricsCollector] = None,
) -> SolveReport:
    """Optimal discrete control of p on N steps with Q levels per control coordinate."""
    q = quantize(p.control_box, Q)
    dp = discretize(p, N)
    band = band_for(dp) if use_band else None

    with logger.context(operation="solve"):
        table = backward_sweep(
            dp, q, band,
            workers=workers, chunk_size=chunk_size, memory_budget=memory_budget, metrics=metrics,
        )
        control = forward_reconstruct(table, dp, q, band)
        trajectory = forward_solve(dp, control)
        cost = discrete_cost(dp, trajectory, control)

        if not values_agree(table.value, cost, VALUE_RELATIVE_TOL, ORACLE_ABSOLUTE_TOL):
            raise InvariantViolation(
                f"V(0) = {table.value!r} but the reconstructed control costs {cost!r}", module="dp"
            )

        relevant, left = _watch_relevant_set(p, trajectory)
        logger.info(f"Solved {p.name}: N={N}, Q={Q}, value={table.value!r}")

    return SolveReport(
        problem=p.name,
        N=dp.N,
        Q=q.Q,
        M=q.M,
        band=use_band,
        value=table.value,
        cost=cost,
        control=control,
        indices=control_indices(control, q),
        trajectory=trajectory,
        counts=table.counts,
        relevant_set=relevant,
        left_relevant_set=left,
        discrete_problem=dp,
        quantization=q,
        constraint=band,
        table=table,
    )
