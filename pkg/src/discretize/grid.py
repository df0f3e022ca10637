"""
Time Grid
Module ID: VDP-DISCRETIZE-GRID-001
Version: 0.1.0

Uniform time grid t_i = i h, h = T / N.
"""

from dataclasses import dataclass, field

import numpy as np

from src.core.errors import RejectedInputError


@dataclass(frozen=True)
class Grid:
    N: int
    horizon: float
    nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 1:
            raise RejectedInputError(f"step count N must be a positive integer, got {self.N}", module="discretize")
        if not (np.isfinite(self.horizon) and self.horizon > 0):
            raise RejectedInputError(f"horizon must be strictly positive, got {self.horizon}", module="discretize")
        object.__setattr__(self, "N", int(self.N))
        # linspace pins t_N = T exactly
        nodes = np.linspace(0.0, float(self.horizon), self.N + 1)
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)

    @property
    def h(self) -> float:
        return self.horizon / self.N


def make_grid(horizon: float, N: int) -> Grid:
    return Grid(N=N, horizon=horizon)
