"""
Convergence and Gap Studies
Module ID: VDP-ORACLE-STUDIES-001
Version: 0.1.0

convergence_study measures, for a fixed Lipschitz control, how the Euler
state and cost errors shrink with h and fits the order as the least-squares
slope of log(error) against log(h).

optimality_gap_study solves the band-constrained discrete problem for each
N, interpolates the optimal control, evaluates it on a fine-grid surrogate
of the continuous problem and reports the excess over the best value seen.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, List, Optional, Sequence, TypeVar

import numpy as np
import pandas as pd

from src.core.constants import FINE_GRID_FACTOR, MIN_STUDY_POINTS
from src.core.errors import RejectedInputError
from src.discretize.dynamics import discrete_cost, discretize, forward_solve
from src.discretize.interpolation import check_continuous_control, interpolate, sample_control
from src.dp.solver import solve
from src.monitoring.logging import get_logger
from src.oracle.reference import (
    ContinuousControl,
    fine_grid_solution,
    has_linear_reference,
    linear_reference_for,
    states_at,
)
from src.problem.model import VolterraProblem

logger = get_logger(__name__)

T = TypeVar("T")

ROW_COLUMNS = ["N", "h", "state_error", "cost_error", "gap"]


@dataclass
class ConvergenceRow:
    N: int
    h: float
    state_error: float
    cost_error: float
    gap: float = 0.0

    def __post_init__(self):
        for name in ("state_error", "cost_error", "gap"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value >= 0):
                raise RejectedInputError(f"{name} must be finite and non-negative, got {value}", module="oracle")


@dataclass
class ConvergenceStudy:
    rows: List[ConvergenceRow]
    state_order: float
    cost_order: float
    reference: str
    N_fine: Optional[int] = None

    def frame(self) -> pd.DataFrame:
        return rows_frame(self.rows)

    def summary(self) -> dict:
        return {
            "reference": self.reference,
            "N_fine": self.N_fine,
            "state_order": _jsonable(self.state_order),
            "cost_order": _jsonable(self.cost_order),
            "rows": [asdict(r) for r in self.rows],
        }


@dataclass
class GapStudy:
    rows: List[ConvergenceRow]
    reference_value: float
    N_fine: int
    surrogate_costs: List[float] = field(default_factory=list)

    def frame(self) -> pd.DataFrame:
        return rows_frame(self.rows)

    def gaps(self) -> List[float]:
        return [r.gap for r in self.rows]

    def summary(self) -> dict:
        return {
            "reference_value": self.reference_value,
            "N_fine": self.N_fine,
            "surrogate_costs": list(self.surrogate_costs),
            "rows": [asdict(r) for r in self.rows],
        }


def _jsonable(order: float):
    return "inf" if order == np.inf else order


def rows_frame(rows: Sequence[ConvergenceRow]) -> pd.DataFrame:
    return pd.DataFrame([asdict(r) for r in rows], columns=ROW_COLUMNS)


def fit_order(hs: Sequence[float], errors: Sequence[float]) -> float:
    """Slope of log(error) vs log(h); inf when any error vanishes."""
    hs = np.asarray(hs, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if hs.size < 2 or hs.size != errors.size:
        raise RejectedInputError("order fit needs at least two (h, error) pairs", module="oracle")
    if np.any(errors <= 0.0):
        return float(np.inf)
    slope, _ = np.polyfit(np.log(hs), np.log(errors), 1)
    return float(slope)


def _check_steps(N_list: Sequence[int], minimum: int) -> List[int]:
    steps = [int(N) for N in N_list]
    if len(steps) < minimum:
        raise RejectedInputError(f"need at least {minimum} step counts, got {len(steps)}", module="oracle")
    if any(N < 1 for N in steps) or any(b <= a for a, b in zip(steps, steps[1:])):
        raise RejectedInputError(f"step counts must be positive and strictly increasing: {steps}", module="oracle")
    return steps


def _map(fn: Callable[[int], T], items: List[int], workers: int) -> List[T]:
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(fn, items))
    return [fn(item) for item in items]


def _fine_steps(N_list: Sequence[int], fine_factor: Optional[int]) -> int:
    if fine_factor is None:
        from src.config.settings import get_settings
        fine_factor = get_settings().oracle.fine_grid_factor
    if fine_factor < FINE_GRID_FACTOR:
        logger.warning(f"Fine grid factor {fine_factor} is below {FINE_GRID_FACTOR}; reference error may show")
    return int(fine_factor) * max(N_list)


def convergence_study(
    p: VolterraProblem,
    u: ContinuousControl,
    N_list: Sequence[int],
    *,
    workers: int = 1,
    fine_factor: Optional[int] = None,
) -> ConvergenceStudy:
    """State and cost errors of the Euler scheme for a fixed control, with fitted orders."""
    steps = _check_steps(N_list, MIN_STUDY_POINTS)
    check_continuous_control(u, p.control_box, p.lipschitz_budget, p.horizon)

    if has_linear_reference(p):
        reference = "linear"
        ref = linear_reference_for(p, u, breakpoints=getattr(u, "breakpoints", None))
        ref_cost = ref.cost(p.running_cost, p.terminal_cost)
        N_fine = None

        def reference_states(nodes: np.ndarray) -> np.ndarray:
            return ref.sample(nodes)
    else:
        reference = "fine_grid"
        N_fine = _fine_steps(steps, fine_factor)
        fine_dp, _, fine_traj, ref_cost = fine_grid_solution(p, u, N_fine)

        def reference_states(nodes: np.ndarray) -> np.ndarray:
            return states_at(fine_traj, fine_dp.grid.nodes, nodes)

    def row(N: int) -> ConvergenceRow:
        dp = discretize(p, N)
        control = sample_control(u, dp.grid)
        traj = forward_solve(dp, control)
        state_error = float(np.abs(reference_states(dp.grid.nodes) - traj.states).max())
        cost_error = abs(ref_cost - discrete_cost(dp, traj, control))
        return ConvergenceRow(N=N, h=dp.h, state_error=state_error, cost_error=cost_error)

    with logger.context(operation="convergence_study"):
        rows = _map(row, steps, workers)
        hs = [r.h for r in rows]
        study = ConvergenceStudy(
            rows=rows,
            state_order=fit_order(hs, [r.state_error for r in rows]),
            cost_order=fit_order(hs, [r.cost_error for r in rows]),
            reference=reference,
            N_fine=N_fine,
        )
        logger.info(
            f"Convergence study on {p.name}: state order {study.state_order:.4g}, cost order {study.cost_order:.4g}",
            reference=reference,
        )
    return study


def optimality_gap_study(
    p: VolterraProblem,
    Q: int,
    N_list: Sequence[int],
    *,
    workers: int = 1,
    fine_factor: Optional[int] = None,
    chunk_size: Optional[int] = None,
    memory_budget: Optional[int] = None,
) -> GapStudy:
    """Gap J(x*, interpolated u^h*) - J_ref over N, J_ref the best surrogate cost observed."""
    steps = _check_steps(N_list, 1)
    N_fine = _fine_steps(steps, fine_factor)

    def evaluate(N: int):
        report = solve(p, N, Q, use_band=True, workers=1, chunk_size=chunk_size, memory_budget=memory_budget)
        grid = report.discrete_problem.grid
        u_tilde = interpolate(report.control, grid, p.lipschitz_budget)
        fine_dp, _, fine_traj, surrogate = fine_grid_solution(p, u_tilde, N_fine)
        coarse = states_at(fine_traj, fine_dp.grid.nodes, grid.nodes)
        state_error = float(np.abs(coarse - report.trajectory.states).max())
        return N, grid.h, surrogate, state_error, abs(surrogate - report.cost)

    with logger.context(operation="optimality_gap_study"):
        results = _map(evaluate, steps, workers)
        surrogates = [r[2] for r in results]
        best = min(surrogates)
        rows = [
            ConvergenceRow(N=N, h=h, state_error=se, cost_error=ce, gap=surrogate - best)
            for N, h, surrogate, se, ce in results
        ]
        logger.info(f"Gap study on {p.name}: reference value {best!r}", gaps=[r.gap for r in rows])
    return GapStudy(rows=rows, reference_value=best, N_fine=N_fine, surrogate_costs=surrogates)
