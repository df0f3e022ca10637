"""
Continuous References
Module ID: VDP-ORACLE-REF-001
Version: 0.1.0

For the scalar linear kernel f = a x + b u with constant x0 the Volterra
equation is the ODE x' = a x + b u, whose solution

    x(t) = e^{a t} x0 + int_0^t e^{a (t - s)} b u(s) ds

is evaluated by adaptive quadrature. Any other problem falls back to the
Euler scheme itself at a much finer resolution.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import quad

from src.core.constants import QUAD_SUBDIVISION_LIMIT, QUAD_TOLERANCE
from src.core.errors import RejectedInputError
from src.discretize.dynamics import (
    DiscreteControl,
    DiscreteProblem,
    Trajectory,
    discrete_cost,
    discretize,
    forward_solve,
)
from src.discretize.interpolation import sample_control
from src.problem.kernels import LinearKernel
from src.problem.model import VolterraProblem

ContinuousControl = Callable[[float], np.ndarray]

# Relative quadrature target; the absolute target is QUAD_TOLERANCE.
QUAD_RELATIVE_TOL = 1e-12


@dataclass(frozen=True)
class SampledTrajectory:
    times: np.ndarray
    states: np.ndarray


def _scalar(value) -> float:
    return float(np.asarray(value, dtype=float).reshape(-1)[0])


class LinearReference:
    """Quadrature solution of x' = a x + b u, x(0) = x0c."""

    def __init__(
        self,
        a: float,
        b: float,
        x0c: float,
        u: ContinuousControl,
        T: float,
        tol: float = QUAD_TOLERANCE,
        breakpoints: Optional[Sequence[float]] = None,
    ):
        if not T > 0:
            raise RejectedInputError(f"horizon must be positive, got {T}", module="oracle")
        self.a = float(a)
        self.b = float(b)
        self.x0c = float(x0c)
        self.u = u
        self.T = float(T)
        self.tol = float(tol)
        self.breakpoints = np.asarray(breakpoints if breakpoints is not None else [], dtype=float)

    def _integrate(self, fn: Callable[[float], float], upper: float) -> float:
        if upper <= 0.0:
            return 0.0
        inner = self.breakpoints[(self.breakpoints > 0.0) & (self.breakpoints < upper)]
        value, _ = quad(
            fn, 0.0, upper,
            epsabs=self.tol, epsrel=QUAD_RELATIVE_TOL, limit=QUAD_SUBDIVISION_LIMIT,
            points=inner if inner.size else None,
        )
        return value

    def state(self, t: float) -> float:
        t = float(t)
        if self.b == 0.0:
            forced = 0.0
        else:
            forced = self._integrate(lambda s: np.exp(self.a * (t - s)) * self.b * _scalar(self.u(s)), t)
        return float(np.exp(self.a * t) * self.x0c + forced)

    def sample(self, times: np.ndarray) -> np.ndarray:
        return np.array([[self.state(t)] for t in np.asarray(times, dtype=float)])

    def cost(self, running, terminal) -> float:
        """int_0^T F(t, x(t), u(t)) dt + F0(x(T))."""
        def integrand(t: float) -> float:
            x = np.array([self.state(t)])
            u = np.atleast_1d(np.asarray(self.u(t), dtype=float))
            return float(running.evaluate(t, x, u))

        tail = float(terminal.evaluate(np.array([self.state(self.T)])))
        return self._integrate(integrand, self.T) + tail


def linear_reference(
    a: float,
    b: float,
    x0c: float,
    u: ContinuousControl,
    T: float,
    samples: Union[int, Sequence[float]],
    tol: float = QUAD_TOLERANCE,
) -> SampledTrajectory:
    """Reference states at ``samples`` equispaced nodes on [0, T] (or at the given times)."""
    if np.ndim(samples) == 0:
        count = int(samples)
        if count < 1:
            raise RejectedInputError("need at least one sample node", module="oracle")
        times = np.linspace(0.0, float(T), count)
    else:
        times = np.asarray(samples, dtype=float)
    ref = LinearReference(a, b, x0c, u, T, tol=tol)
    return SampledTrajectory(times=times, states=ref.sample(times))


def linear_reference_for(
    p: VolterraProblem,
    u: ContinuousControl,
    tol: float = QUAD_TOLERANCE,
    breakpoints: Optional[Sequence[float]] = None,
) -> LinearReference:
    """LinearReference for a scalar problem with the built-in linear kernel and constant x0."""
    if not has_linear_reference(p):
        raise RejectedInputError(
            f"problem {p.name} has no closed-form reference: needs the scalar linear kernel and constant x0",
            module="oracle",
        )
    a, b = p.kernel.linear_coefficients()
    return LinearReference(
        a[0, 0], b[0, 0], p.x0.evaluate(0.0)[0], u, p.horizon, tol=tol, breakpoints=breakpoints
    )


def has_linear_reference(p: VolterraProblem) -> bool:
    return (
        isinstance(p.kernel, LinearKernel)
        and p.kernel.linear_coefficients() is not None
        and p.state_dim == 1
        and p.control_dim == 1
        and p.x0.is_constant()
    )


def fine_grid_solution(
    p: VolterraProblem,
    u: ContinuousControl,
    N_fine: int,
) -> Tuple[DiscreteProblem, DiscreteControl, Trajectory, float]:
    """Euler solve at N_fine steps with u sampled at the fine nodes, plus its cost."""
    dp = discretize(p, N_fine)
    control = sample_control(u, dp.grid)
    traj = forward_solve(dp, control)
    return dp, control, traj, discrete_cost(dp, traj, control)


def fine_grid_reference(p: VolterraProblem, u: ContinuousControl, N_fine: int) -> Trajectory:
    """Surrogate continuous trajectory from the Euler scheme at N_fine steps."""
    return fine_grid_solution(p, u, N_fine)[2]


def states_at(traj: Trajectory, fine_nodes: np.ndarray, times: np.ndarray) -> np.ndarray:
    """Trajectory states at arbitrary times by linear interpolation between fine nodes."""
    return np.stack(
        [np.interp(times, fine_nodes, traj.states[:, k]) for k in range(traj.states.shape[1])],
        axis=-1,
    )
