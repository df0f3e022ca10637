"""
Euler Discretization
Module ID: VDP-DISCRETIZE-001
Version: 0.1.0

Left-endpoint rectangle discretization of the controlled Volterra equation

    x(i) = x0(t_i) + sum_{j<i} phi(i, j, x(j), u(j)),  phi = h f(t_i, t_j, ., .)

and of the cost  J^h = sum_{i<N} Phi(i, x(i), u(i)) + Phi0(x(N)),  Phi = h F(t_i, ., .).

Costs are accumulated from the terminal term backwards,
terminal + Phi(N-1) + ... + Phi(0), the same order the value recursion
uses, so that equal costs compare equal bit for bit.
"""

import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterator, List

import numpy as np

from src.core.constants import ADMISSIBILITY_TOL
from src.core.errors import NumericalFailure, RejectedInputError
from src.discretize.grid import Grid
from src.problem.model import VolterraProblem

_active = threading.local()


@contextmanager
def counting(tally: Any) -> Iterator[Any]:
    """
    Tally evaluations made by the calling thread into ``tally``, any object
    with integer fields f_evals, x0_evals and phi_evals. Every row evaluated
    by DiscreteProblem.phi counts one f evaluation, every row of stage_cost
    or terminal one Phi evaluation, and every x0_at read one x0 evaluation.
    """
    previous = getattr(_active, "tally", None)
    _active.tally = tally
    try:
        yield tally
    finally:
        _active.tally = previous


def _count(name: str, rows: int) -> None:
    tally = getattr(_active, "tally", None)
    if tally is not None:
        setattr(tally, name, getattr(tally, name) + rows)


@dataclass(frozen=True, eq=False)
class DiscreteProblem:
    """A VolterraProblem on a grid of N Euler steps."""

    problem: VolterraProblem
    grid: Grid
    x0_nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if abs(self.grid.horizon - self.problem.horizon) > 1e-12 * max(1.0, self.problem.horizon):
            raise RejectedInputError("grid horizon differs from problem horizon", module="discretize")
        x0_nodes = np.stack([self.problem.x0.evaluate(t) for t in self.grid.nodes])
        x0_nodes.setflags(write=False)
        object.__setattr__(self, "x0_nodes", x0_nodes)

    @property
    def N(self) -> int:
        return self.grid.N

    @property
    def h(self) -> float:
        return self.grid.h

    @property
    def state_dim(self) -> int:
        return self.problem.state_dim

    @property
    def control_dim(self) -> int:
        return self.problem.control_dim

    def x0_at(self, i: int) -> np.ndarray:
        _count("x0_evals", 1)
        return self.x0_nodes[i]

    def phi(self, i: int, j, x: np.ndarray, u: np.ndarray) -> np.ndarray:
        """phi(i, j, x, u) = h f(t_i, t_j, x, u); j may be an index array."""
        j_arr = np.asarray(j)
        if not (0 < i <= self.N) or np.any(j_arr < 0) or np.any(j_arr >= i):
            raise RejectedInputError(f"phi needs 0 <= j < i <= N, got i={i}, j={j}", module="discretize")
        nodes = self.grid.nodes
        out = self.h * self.problem.kernel.evaluate(nodes[i], nodes[j_arr], x, u)
        _count("f_evals", np.size(out) // self.state_dim)
        return out

    def stage_cost(self, i: int, x: np.ndarray, u: np.ndarray) -> np.ndarray:
        """Phi(i, x, u) = h F(t_i, x, u) for 0 <= i < N."""
        if not 0 <= i < self.N:
            raise RejectedInputError(f"stage cost needs 0 <= i < N, got i={i}", module="discretize")
        out = self.h * self.problem.running_cost.evaluate(self.grid.nodes[i], x, u)
        _count("phi_evals", np.size(out))
        return out

    def terminal(self, x: np.ndarray) -> np.ndarray:
        """Phi0(x) = F0(x)."""
        out = self.problem.terminal_cost.evaluate(x)
        _count("phi_evals", np.size(out))
        return out


def discretize(p: VolterraProblem, N: int) -> DiscreteProblem:
    """Euler discretization of p with N steps."""
    return DiscreteProblem(problem=p, grid=Grid(N=N, horizon=p.horizon))


@dataclass(frozen=True, eq=False)
class DiscreteControl:
    """Control values u(0..N-1), shape (N, m)."""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] < 1:
            raise RejectedInputError("discrete control must have shape (N, m) with N >= 1", module="discretize")
        if not np.all(np.isfinite(values)):
            raise RejectedInputError("discrete control has non-finite entries", module="discretize")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def N(self) -> int:
        return self.values.shape[0]

    def to_list(self) -> List[List[float]]:
        return self.values.tolist()


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States x(0..N), shape (N+1, n)."""

    states: np.ndarray

    def __post_init__(self):
        states = np.array(self.states, dtype=float)
        if states.ndim == 1:
            states = states[:, None]
        states.setflags(write=False)
        object.__setattr__(self, "states", states)

    @property
    def N(self) -> int:
        return self.states.shape[0] - 1

    def to_list(self) -> List[List[float]]:
        return self.states.tolist()


def _check_control(dp: DiscreteProblem, c: DiscreteControl) -> None:
    if c.values.shape != (dp.N, dp.control_dim):
        raise RejectedInputError(
            f"control has shape {c.values.shape}, expected {(dp.N, dp.control_dim)}", module="discretize"
        )
    if not dp.problem.in_box(c.values, tol=ADMISSIBILITY_TOL):
        raise RejectedInputError("control leaves the control box", module="discretize")


def forward_solve(dp: DiscreteProblem, c: DiscreteControl) -> Trajectory:
    """Solve the discrete Volterra equation for control c, increasing in i."""
    _check_control(dp, c)
    N = dp.N
    u = c.values
    x = np.empty((N + 1, dp.state_dim))
    x[0] = dp.x0_at(0)
    for i in range(1, N + 1):
        history = np.arange(i)
        contributions = dp.phi(i, history, x[:i], u[:i])
        x[i] = dp.x0_at(i) + contributions.sum(axis=0)
        if not np.all(np.isfinite(x[i])):
            raise NumericalFailure(f"state became non-finite: {x[i]}", module="discretize", stage=i)
    return Trajectory(x)


def stage_costs(dp: DiscreteProblem, traj: Trajectory, c: DiscreteControl) -> np.ndarray:
    """Per-stage costs Phi(i, x(i), u(i)) for i < N, then Phi0(x(N))."""
    if traj.states.shape != (dp.N + 1, dp.state_dim) or c.values.shape != (dp.N, dp.control_dim):
        raise RejectedInputError(
            f"trajectory/control lengths do not match N={dp.N}", module="discretize"
        )
    running = np.array([dp.stage_cost(i, traj.states[i], c.values[i]) for i in range(dp.N)], dtype=float)
    return np.append(running, dp.terminal(traj.states[dp.N]))


def tail_cost(dp: DiscreteProblem, traj: Trajectory, c: DiscreteControl, i: int) -> float:
    """sum_{j >= i} Phi(j, x(j), u(j)) + Phi0(x(N)), accumulated from the end."""
    if not 0 <= i <= dp.N:
        raise RejectedInputError(f"tail stage must lie in 0..N, got {i}", module="discretize")
    costs = stage_costs(dp, traj, c)
    total = costs[dp.N]
    for j in range(dp.N - 1, i - 1, -1):
        total = total + costs[j]
    if not np.isfinite(total):
        raise NumericalFailure("cost became non-finite", module="discretize", stage=i)
    return float(total)


def discrete_cost(dp: DiscreteProblem, traj: Trajectory, c: DiscreteControl) -> float:
    """J^h = h sum_{i<N} F(t_i, x(i), u(i)) + F0(x(N))."""
    return tail_cost(dp, traj, c, 0)
