"""
Control Interpolation
Module ID: VDP-DISCRETIZE-INTERP-001
Version: 0.1.0

interpolate() joins consecutive discrete values by straight segments and
holds u(N-1) on the last interval [(N-1)h, T], so the result stays in the
L-Lipschitz class whenever the discrete control respects the band
|u(i+1) - u(i)| <= L h.
"""

from typing import Callable

import numpy as np

from src.core.constants import ADMISSIBILITY_TOL, LIPSCHITZ_CHECK_TOL
from src.core.errors import RejectedInputError
from src.discretize.dynamics import DiscreteControl
from src.discretize.grid import Grid

ContinuousControl = Callable[[float], np.ndarray]


def check_lipschitz_admissible(c: DiscreteControl, L: float, h: float, tol: float = ADMISSIBILITY_TOL) -> bool:
    """True iff every consecutive step satisfies |u(i+1) - u(i)|_inf <= L h + tol."""
    if c.N < 2:
        return True
    steps = np.abs(np.diff(c.values, axis=0)).max(axis=1)
    return bool(np.all(steps <= L * h + tol))


class InterpolatedControl:
    """Piecewise-linear control through (t_i, u(i)), i = 0..N-1, constant after t_{N-1}."""

    def __init__(self, c: DiscreteControl, grid: Grid):
        self.knots = grid.nodes[: c.N]
        self.values = c.values
        self.horizon = grid.horizon

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        slack = 1e-12 * max(1.0, self.horizon)
        if np.any(t_arr < -slack) or np.any(t_arr > self.horizon + slack):
            raise RejectedInputError(
                f"interpolated control evaluated outside [0, {self.horizon}]", module="discretize"
            )
        columns = [np.interp(t_arr, self.knots, self.values[:, k]) for k in range(self.values.shape[1])]
        return np.stack(columns, axis=-1)

    @property
    def breakpoints(self) -> np.ndarray:
        """Interior kinks, for quadrature."""
        return self.knots[1:]


def interpolate(c: DiscreteControl, grid: Grid, L: float) -> InterpolatedControl:
    """Linear interpolation of a band-admissible discrete control."""
    if c.N != grid.N:
        raise RejectedInputError(f"control has {c.N} values, grid has N={grid.N}", module="discretize")
    if not check_lipschitz_admissible(c, L, grid.h):
        raise RejectedInputError(
            f"control violates the Lipschitz band |u(i+1) - u(i)| <= {L} * {grid.h}", module="discretize"
        )
    return InterpolatedControl(c, grid)


def sample_control(u: ContinuousControl, grid: Grid) -> DiscreteControl:
    """u^h(i) = u(t_i) for i = 0..N-1."""
    samples = [np.atleast_1d(np.asarray(u(float(t)), dtype=float)) for t in grid.nodes[:-1]]
    return DiscreteControl(np.stack(samples))


def check_continuous_control(
    u: ContinuousControl,
    box: np.ndarray,
    L: float,
    horizon: float,
    samples: int = 1025,
) -> None:
    """Reject u if dense sampling shows it leaving the box or breaking the L-Lipschitz bound."""
    t = np.linspace(0.0, horizon, samples)
    values = np.stack([np.atleast_1d(np.asarray(u(float(s)), dtype=float)) for s in t])
    box = np.atleast_2d(box)
    if np.any(values < box[:, 0] - ADMISSIBILITY_TOL) or np.any(values > box[:, 1] + ADMISSIBILITY_TOL):
        raise RejectedInputError("study control leaves the control box", module="discretize")
    rates = np.abs(np.diff(values, axis=0)).max(axis=1)
    if np.any(rates > L * np.diff(t) + LIPSCHITZ_CHECK_TOL):
        raise RejectedInputError(f"study control is not {L}-Lipschitz", module="discretize")


class RampControl:
    """u_k(t) = min(a_k + L t, b_k)."""

    def __init__(self, box: np.ndarray, L: float):
        box = np.atleast_2d(np.asarray(box, dtype=float))
        self.lower = box[:, 0]
        self.upper = box[:, 1]
        self.L = float(L)

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)[..., None]
        return np.minimum(self.lower + self.L * t_arr, self.upper)

    @property
    def breakpoints(self) -> np.ndarray:
        """Times at which a coordinate reaches its upper bound."""
        if self.L == 0.0:
            return np.empty(0)
        return np.unique((self.upper - self.lower) / self.L)


class ConstantControl:
    """Box midpoint."""

    def __init__(self, box: np.ndarray):
        box = np.atleast_2d(np.asarray(box, dtype=float))
        self.value = 0.5 * (box[:, 0] + box[:, 1])

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        return np.broadcast_to(self.value, t_arr.shape + self.value.shape).copy()
