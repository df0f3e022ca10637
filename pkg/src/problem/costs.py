"""
Initial Functions and Cost Forms
Module ID: VDP-PROBLEM-COSTS-001
Version: 0.1.0

Evaluations are batched on the last axis: states (..., n), controls (..., m).
"""

from abc import ABC, abstractmethod
from typing import Optional

import numpy as np


def _vector(values, length: int, default: float = 0.0) -> np.ndarray:
    if values is None:
        return np.full(length, default, dtype=float)
    return np.asarray(values, dtype=float).reshape(length)


# ============================================================================
# INITIAL FUNCTIONS x0(t)
# ============================================================================

class InitialFunction(ABC):
    form: str = "abstract"

    @abstractmethod
    def evaluate(self, t: float) -> np.ndarray:
        """x0(t) as an array of shape (n,)."""

    @abstractmethod
    def sup(self, horizon: float) -> float:
        """sup over [0, T] of |x0(t)| in the max norm."""

    def is_constant(self) -> bool:
        return False


class ConstantInitial(InitialFunction):
    form = "constant"

    def __init__(self, value):
        self.value = np.atleast_1d(np.asarray(value, dtype=float))

    def evaluate(self, t):
        return self.value.copy()

    def sup(self, horizon):
        return float(np.abs(self.value).max())

    def is_constant(self):
        return True


class AffineInitial(InitialFunction):
    """x0(t) = value + slope t."""

    form = "affine"

    def __init__(self, value, slope):
        self.value = np.atleast_1d(np.asarray(value, dtype=float))
        self.slope = _vector(slope, self.value.size)

    def evaluate(self, t):
        return self.value + self.slope * float(t)

    def sup(self, horizon):
        # affine in t: the sup sits at an endpoint
        end = self.value + self.slope * horizon
        return float(max(np.abs(self.value).max(), np.abs(end).max()))

    def is_constant(self):
        return not np.any(self.slope)


# ============================================================================
# RUNNING COSTS F(t, x, u)
# ============================================================================

class RunningCost(ABC):
    form: str = "abstract"

    @abstractmethod
    def evaluate(self, t, x: np.ndarray, u: np.ndarray) -> np.ndarray:
        """F(t, x, u) with shape x.shape[:-1]."""


class ConstantRunningCost(RunningCost):
    form = "constant"

    def __init__(self, value: float):
        self.value = float(value)

    def evaluate(self, t, x, u):
        shape = np.broadcast_shapes(x.shape[:-1], u.shape[:-1])
        return np.full(shape, self.value)


class QuadraticRunningCost(RunningCost):
    """F = sum_k q_k (x_k - x_target_k)^2 + sum_k r_k (u_k - u_target_k)^2."""

    form = "quadratic"

    def __init__(self, q, r, x_target=None, u_target=None):
        self.q = np.atleast_1d(np.asarray(q, dtype=float))
        self.r = np.atleast_1d(np.asarray(r, dtype=float))
        self.x_target = _vector(x_target, self.q.size)
        self.u_target = _vector(u_target, self.r.size)

    def evaluate(self, t, x, u):
        dx = x - self.x_target
        du = u - self.u_target
        return (self.q * dx * dx).sum(axis=-1) + (self.r * du * du).sum(axis=-1)


# ============================================================================
# TERMINAL COSTS F0(x)
# ============================================================================

class TerminalCost(ABC):
    form: str = "abstract"

    @abstractmethod
    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """F0(x) with shape x.shape[:-1]."""


class ConstantTerminalCost(TerminalCost):
    form = "constant"

    def __init__(self, value: float):
        self.value = float(value)

    def evaluate(self, x):
        return np.full(x.shape[:-1], self.value)


class QuadraticTerminalCost(TerminalCost):
    form = "quadratic"

    def __init__(self, q, target: Optional[list] = None):
        self.q = np.atleast_1d(np.asarray(q, dtype=float))
        self.target = _vector(target, self.q.size)

    def evaluate(self, x):
        d = x - self.target
        return (self.q * d * d).sum(axis=-1)


class LinearTerminalCost(TerminalCost):
    form = "linear"

    def __init__(self, c):
        self.c = np.atleast_1d(np.asarray(c, dtype=float))

    def evaluate(self, x):
        return (self.c * x).sum(axis=-1)
