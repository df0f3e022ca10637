"""
Continuous Problem Model
Module ID: VDP-PROBLEM-MODEL-001
Version: 0.1.0

VolterraProblem bundles the controlled system

    x(t) = x0(t) + int_0^t f(t, s, x(s), u(s)) ds

with the cost  int_0^T F(t, x, u) dt + F0(x(T)), the control box and the
Lipschitz budget on admissible controls.
"""

import hashlib
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from src.core.errors import RejectedInputError
from src.problem import costs as cost_forms
from src.problem.kernels import Kernel, LinearKernel, LogisticMemoryKernel, MemoryDecayKernel
from src.problem.schema import ProblemConfig, parse_problem_config

# Slack on the time-domain check of eval_kernel.
TIME_DOMAIN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class VolterraProblem:
    """Continuous controlled-Volterra problem instance. Immutable."""

    kernel: Kernel
    x0: cost_forms.InitialFunction
    running_cost: cost_forms.RunningCost
    terminal_cost: cost_forms.TerminalCost
    horizon: float
    control_box: np.ndarray
    lipschitz_budget: float
    name: str = "unnamed"
    relevant_radius: Optional[float] = None
    config: Optional[ProblemConfig] = field(default=None, repr=False)

    def __post_init__(self):
        box = np.atleast_2d(np.array(self.control_box, dtype=float))
        if box.ndim != 2 or box.shape[1] != 2:
            raise RejectedInputError("control_box must be a list of [lower, upper] pairs", module="problem")
        if np.any(box[:, 0] > box[:, 1]):
            raise RejectedInputError("control_box has a lower bound above its upper bound", module="problem")
        box.setflags(write=False)
        object.__setattr__(self, "control_box", box)

        if not (np.isfinite(self.horizon) and self.horizon > 0):
            raise RejectedInputError(f"horizon must be strictly positive, got {self.horizon}", module="problem")
        if not (np.isfinite(self.lipschitz_budget) and self.lipschitz_budget >= 0):
            raise RejectedInputError(
                f"lipschitz_budget must be non-negative, got {self.lipschitz_budget}", module="problem"
            )
        if box.shape[0] != self.kernel.control_dim:
            raise RejectedInputError(
                f"control_box has {box.shape[0]} intervals, kernel expects m={self.kernel.control_dim}",
                module="problem",
            )
        if self.x0.evaluate(0.0).shape != (self.kernel.state_dim,):
            raise RejectedInputError("x0 dimension does not match the kernel state dimension", module="problem")

    @property
    def state_dim(self) -> int:
        return self.kernel.state_dim

    @property
    def control_dim(self) -> int:
        return self.kernel.control_dim

    @property
    def u_sup(self) -> float:
        """Largest max-norm of a control in the box."""
        return float(np.abs(self.control_box).max())

    @property
    def box_diameter(self) -> float:
        return float((self.control_box[:, 1] - self.control_box[:, 0]).max())

    def in_box(self, u: np.ndarray, tol: float = 0.0) -> bool:
        u = np.asarray(u, dtype=float)
        return bool(np.all(u >= self.control_box[:, 0] - tol) and np.all(u <= self.control_box[:, 1] + tol))

    def describe(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "kernel": self.kernel.form,
            "n": self.state_dim,
            "m": self.control_dim,
            "horizon": self.horizon,
            "lipschitz_budget": self.lipschitz_budget,
        }

    def digest(self) -> str:
        """
        Hex digest of everything that shapes the discrete problem: the
        parameters of kernel, x0 and both costs, the horizon, the box and
        the budget. The name does not enter. Callables count by identity.
        """
        parts = [_state_token(p) for p in (self.kernel, self.x0, self.running_cost, self.terminal_cost)]
        parts.append(repr((float(self.horizon), self.control_box.tolist(), float(self.lipschitz_budget),
                           self.relevant_radius)))
        return hashlib.sha256("\n".join(parts).encode()).hexdigest()[:16]


def _state_token(obj: Any) -> str:
    items = []
    for key, value in sorted(vars(obj).items()):
        if isinstance(value, np.ndarray):
            value = value.tolist()
        elif callable(value):
            value = f"{getattr(value, '__qualname__', type(value).__name__)}@{id(value)}"
        items.append(f"{key}={value!r}")
    return f"{type(obj).__name__}({', '.join(items)})"


def eval_kernel(p: VolterraProblem, t: float, s: float, x, u) -> np.ndarray:
    """f(t, s, x, u) for 0 <= s <= t <= T."""
    t = float(t)
    s = float(s)
    slack = TIME_DOMAIN_TOL * max(1.0, p.horizon)
    if s < -slack or s > t + slack or t > p.horizon + slack:
        raise RejectedInputError(
            f"kernel evaluated outside 0 <= s <= t <= T (t={t}, s={s}, T={p.horizon})", module="problem"
        )
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    if x.shape[-1:] != (p.state_dim,) or u.shape[-1:] != (p.control_dim,):
        raise RejectedInputError(
            f"kernel expects x in R^{p.state_dim} and u in R^{p.control_dim}", module="problem"
        )
    return p.kernel.evaluate(t, s, x, u)


# ============================================================================
# CONSTRUCTION FROM CONFIGURATION
# ============================================================================

def _build_kernel(cfg: ProblemConfig) -> Kernel:
    params = cfg.kernel_params()
    if cfg.kernel.form == "linear":
        return LinearKernel(params.a, params.b)
    if cfg.kernel.form == "memory_decay":
        return MemoryDecayKernel(params.a, params.b, params.kappa)
    return LogisticMemoryKernel(params.c, params.kappa, params.b)


def _build_initial(cfg: ProblemConfig) -> cost_forms.InitialFunction:
    params = cfg.x0_params()
    if cfg.x0.form == "affine":
        return cost_forms.AffineInitial(params.value, params.slope)
    return cost_forms.ConstantInitial(params.value)


def _build_running(cfg: ProblemConfig) -> cost_forms.RunningCost:
    params = cfg.running_cost_params()
    if cfg.running_cost.form == "quadratic":
        return cost_forms.QuadraticRunningCost(params.q, params.r, params.x_target, params.u_target)
    return cost_forms.ConstantRunningCost(params.value)


def _build_terminal(cfg: ProblemConfig) -> cost_forms.TerminalCost:
    params = cfg.terminal_cost_params()
    if cfg.terminal_cost.form == "quadratic":
        return cost_forms.QuadraticTerminalCost(params.q, params.target)
    if cfg.terminal_cost.form == "linear":
        return cost_forms.LinearTerminalCost(params.c)
    return cost_forms.ConstantTerminalCost(params.value)


def problem_from_config(cfg: ProblemConfig, name: Optional[str] = None) -> VolterraProblem:
    """Instantiate a VolterraProblem from a validated configuration."""
    return VolterraProblem(
        kernel=_build_kernel(cfg),
        x0=_build_initial(cfg),
        running_cost=_build_running(cfg),
        terminal_cost=_build_terminal(cfg),
        horizon=cfg.horizon,
        control_box=np.asarray(cfg.control_box, dtype=float),
        lipschitz_budget=cfg.lipschitz_budget,
        name=name or cfg.name or "unnamed",
        relevant_radius=cfg.relevant_radius,
        config=cfg,
    )


def problem_from_dict(data: Dict[str, Any], name: Optional[str] = None) -> VolterraProblem:
    return problem_from_config(parse_problem_config(data), name=name)
