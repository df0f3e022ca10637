"""
Kernel Library
Module ID: VDP-PROBLEM-KERNELS-001
Version: 0.1.0

Named parametrized kernel forms f(t, s, x, u) plus an extension kernel
wrapping a caller-supplied function with declared constants.

All kernels evaluate batches: x has shape (..., n), u has shape (..., m),
t and s broadcast against the batch shape. The result has shape (..., n).
Matrix products are written as broadcast multiply-and-sum so every entry
is computed the same way whatever the batch size.

Norms are max norms; matrix norms are the induced max-row-sum norm.
"""

from abc import ABC, abstractmethod
from typing import Callable, Optional, Tuple

import numpy as np

from src.core.errors import RejectedInputError


def induced_max_norm(matrix: np.ndarray) -> float:
    """Operator norm induced by the max norm (largest absolute row sum)."""
    return float(np.abs(matrix).sum(axis=1).max()) if matrix.size else 0.0


def _matvec(matrix: np.ndarray, v: np.ndarray) -> np.ndarray:
    return (v[..., None, :] * matrix).sum(axis=-1)


def _time_weight(kappa: float, t, s) -> np.ndarray:
    lag = np.asarray(t, dtype=float) - np.asarray(s, dtype=float)
    return np.exp(-kappa * lag)[..., None]


class Kernel(ABC):
    """Integrand of the controlled Volterra equation."""

    form: str = "abstract"
    state_nonlinear: bool = False

    def __init__(self, state_dim: int, control_dim: int):
        self.state_dim = state_dim
        self.control_dim = control_dim

    @abstractmethod
    def evaluate(self, t, s, x: np.ndarray, u: np.ndarray) -> np.ndarray:
        """Return f(t, s, x, u) for a batch of states and controls."""

    @abstractmethod
    def lipschitz_x(self, radius: float) -> float:
        """Lipschitz constant in x on the ball of the given radius."""

    @abstractmethod
    def lipschitz_u(self, radius: float) -> float:
        """Lipschitz constant in u on the ball of the given radius."""

    @abstractmethod
    def growth(self, u_sup: float, radius: float) -> Tuple[float, float]:
        """(G0, G1) with |f(t,s,x,u)| <= G0 + G1 |x| for |x| <= radius, |u| <= u_sup."""

    @abstractmethod
    def offset(self, u_sup: float) -> float:
        """G2 = sup |f(t,s,0,u)| over the control box."""

    def lipschitz(self, radius: float) -> float:
        """Joint Lipschitz constant L_f in (x, u)."""
        return self.lipschitz_x(radius) + self.lipschitz_u(radius)

    def linear_coefficients(self) -> Optional[Tuple[np.ndarray, np.ndarray]]:
        """(a, b) for time-invariant linear kernels, None otherwise."""
        return None

    def describe(self) -> dict:
        return {"form": self.form, "n": self.state_dim, "m": self.control_dim}


class LinearKernel(Kernel):
    """f = a x + b u."""

    form = "linear"

    def __init__(self, a, b):
        self.a = np.atleast_2d(np.asarray(a, dtype=float))
        self.b = np.atleast_2d(np.asarray(b, dtype=float))
        n, m = self.b.shape
        if self.a.shape != (n, n):
            raise RejectedInputError(
                f"linear kernel: a has shape {self.a.shape}, expected {(n, n)}", module="problem"
            )
        super().__init__(n, m)

    def evaluate(self, t, s, x, u):
        return _matvec(self.a, x) + _matvec(self.b, u)

    def lipschitz_x(self, radius):
        return induced_max_norm(self.a)

    def lipschitz_u(self, radius):
        return induced_max_norm(self.b)

    def growth(self, u_sup, radius):
        return induced_max_norm(self.b) * u_sup, induced_max_norm(self.a)

    def offset(self, u_sup):
        return induced_max_norm(self.b) * u_sup

    def linear_coefficients(self):
        return self.a, self.b


class MemoryDecayKernel(LinearKernel):
    """f = exp(-kappa (t - s)) (a x + b u), kappa >= 0."""

    form = "memory_decay"

    def __init__(self, a, b, kappa: float):
        if kappa < 0:
            raise RejectedInputError("memory_decay kernel: kappa must be non-negative", module="problem")
        super().__init__(a, b)
        self.kappa = float(kappa)

    def evaluate(self, t, s, x, u):
        return _time_weight(self.kappa, t, s) * super().evaluate(t, s, x, u)

    # exp(-kappa (t-s)) <= 1 for s <= t, so the linear constants carry over.

    def linear_coefficients(self):
        return None


class LogisticMemoryKernel(Kernel):
    """Scalar f = c exp(-kappa (t - s)) x (1 - x) + b u."""

    form = "logistic_memory"
    state_nonlinear = True

    def __init__(self, c: float, kappa: float, b: float):
        if kappa < 0:
            raise RejectedInputError("logistic_memory kernel: kappa must be non-negative", module="problem")
        super().__init__(1, 1)
        self.c = float(c)
        self.kappa = float(kappa)
        self.b = float(b)

    def evaluate(self, t, s, x, u):
        return self.c * _time_weight(self.kappa, t, s) * x * (1.0 - x) + self.b * u

    def lipschitz_x(self, radius):
        # |d/dx x(1-x)| = |1 - 2x| <= 1 + 2R
        return abs(self.c) * (1.0 + 2.0 * radius)

    def lipschitz_u(self, radius):
        return abs(self.b)

    def growth(self, u_sup, radius):
        return abs(self.b) * u_sup, abs(self.c) * (1.0 + radius)

    def offset(self, u_sup):
        return abs(self.b) * u_sup


class CallableKernel(Kernel):
    """
    Extension kernel around a vectorized function func(t, s, x, u).

    The caller declares the constants the bound estimators need; they are
    taken on trust and cannot depend on the radius.
    """

    form = "callable"

    def __init__(
        self,
        func: Callable[..., np.ndarray],
        dims: Tuple[int, int],
        lipschitz_x: float,
        lipschitz_u: float,
        growth: Tuple[float, float],
        offset: Optional[float] = None,
    ):
        n, m = dims
        if n < 1 or m < 1:
            raise RejectedInputError("callable kernel: dimensions must be at least 1", module="problem")
        constants = (lipschitz_x, lipschitz_u, *growth) + ((offset,) if offset is not None else ())
        if any(not np.isfinite(v) or v < 0 for v in constants):
            raise RejectedInputError(
                "callable kernel: declared constants must be finite and non-negative", module="problem"
            )
        super().__init__(n, m)
        self.func = func
        self._lipschitz_x = float(lipschitz_x)
        self._lipschitz_u = float(lipschitz_u)
        self._growth = (float(growth[0]), float(growth[1]))
        self._offset = float(offset) if offset is not None else self._growth[0]

    def evaluate(self, t, s, x, u):
        out = np.asarray(self.func(t, s, x, u), dtype=float)
        return np.broadcast_to(out, x.shape[:-1] + (self.state_dim,))

    def lipschitz_x(self, radius):
        return self._lipschitz_x

    def lipschitz_u(self, radius):
        return self._lipschitz_u

    def growth(self, u_sup, radius):
        return self._growth

    def offset(self, u_sup):
        return self._offset
