"""
Problem Configuration Schema
Module ID: VDP-PROBLEM-SCHEMA-001
Version: 0.1.0

Pydantic models for the JSON problem configuration. Every object rejects
unknown fields; each named form validates its own parameters.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Type

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from src.core.errors import RejectedInputError


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


# ============================================================================
# FORM PARAMETERS
# ============================================================================

class LinearKernelParams(_Strict):
    """f(t,s,x,u) = a x + b u."""
    a: List[List[float]]
    b: List[List[float]]


class MemoryDecayKernelParams(_Strict):
    """f(t,s,x,u) = exp(-kappa (t-s)) (a x + b u)."""
    a: List[List[float]]
    b: List[List[float]]
    kappa: float

    @field_validator("kappa")
    @classmethod
    def validate_kappa(cls, v: float) -> float:
        if v < 0:
            raise ValueError("kappa must be non-negative")
        return v


class LogisticMemoryKernelParams(_Strict):
    """f(t,s,x,u) = c exp(-kappa (t-s)) x (1-x) + b u, scalar."""
    c: float
    kappa: float
    b: float

    @field_validator("kappa")
    @classmethod
    def validate_kappa(cls, v: float) -> float:
        if v < 0:
            raise ValueError("kappa must be non-negative")
        return v


class ConstantInitialParams(_Strict):
    value: List[float]


class AffineInitialParams(_Strict):
    """x0(t) = value + slope t."""
    value: List[float]
    slope: List[float]


class ConstantCostParams(_Strict):
    value: float


class QuadraticRunningParams(_Strict):
    """F = sum q_k (x_k - x_target_k)^2 + sum r_k (u_k - u_target_k)^2."""
    q: List[float]
    r: List[float]
    x_target: Optional[List[float]] = None
    u_target: Optional[List[float]] = None


class QuadraticTerminalParams(_Strict):
    """F0 = sum q_k (x_k - target_k)^2."""
    q: List[float]
    target: Optional[List[float]] = None


class LinearTerminalParams(_Strict):
    """F0 = c . x."""
    c: List[float]


KERNEL_FORMS: Dict[str, Type[BaseModel]] = {
    "linear": LinearKernelParams,
    "memory_decay": MemoryDecayKernelParams,
    "logistic_memory": LogisticMemoryKernelParams,
}

INITIAL_FORMS: Dict[str, Type[BaseModel]] = {
    "constant": ConstantInitialParams,
    "affine": AffineInitialParams,
}

RUNNING_COST_FORMS: Dict[str, Type[BaseModel]] = {
    "constant": ConstantCostParams,
    "quadratic": QuadraticRunningParams,
}

TERMINAL_COST_FORMS: Dict[str, Type[BaseModel]] = {
    "constant": ConstantCostParams,
    "quadratic": QuadraticTerminalParams,
    "linear": LinearTerminalParams,
}


# ============================================================================
# TOP-LEVEL CONFIGURATION
# ============================================================================

class FormSpec(_Strict):
    """A named form plus its raw parameters."""
    form: str
    params: Dict[str, Any] = {}


class Dims(_Strict):
    n: int
    m: int

    @field_validator("n", "m")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("dimensions must be at least 1")
        return v


def _check_vector(name: str, values: Optional[List[float]], length: int) -> None:
    if values is not None and len(values) != length:
        raise ValueError(f"{name} must have length {length}, got {len(values)}")


def _check_matrix(name: str, rows: List[List[float]], shape: Tuple[int, int]) -> None:
    if len(rows) != shape[0] or any(len(row) != shape[1] for row in rows):
        raise ValueError(f"{name} must be a {shape[0]}x{shape[1]} matrix")


class ProblemConfig(_Strict):
    """Complete problem declaration as read from JSON."""

    name: Optional[str] = None
    kernel: FormSpec
    x0: FormSpec
    running_cost: FormSpec
    terminal_cost: FormSpec
    horizon: float
    control_box: List[Tuple[float, float]]
    lipschitz_budget: float
    dims: Dims
    relevant_radius: Optional[float] = None

    @field_validator("horizon")
    @classmethod
    def validate_horizon(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("horizon must be strictly positive")
        return v

    @field_validator("lipschitz_budget")
    @classmethod
    def validate_budget(cls, v: float) -> float:
        if v < 0:
            raise ValueError("lipschitz_budget must be non-negative")
        return v

    @field_validator("relevant_radius")
    @classmethod
    def validate_radius(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and v < 0:
            raise ValueError("relevant_radius must be non-negative")
        return v

    @field_validator("control_box")
    @classmethod
    def validate_box(cls, v: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
        for k, (lo, hi) in enumerate(v):
            if lo > hi:
                raise ValueError(f"control_box[{k}] has lower bound above upper bound")
        return v

    @model_validator(mode="after")
    def validate_forms(self) -> "ProblemConfig":
        n, m = self.dims.n, self.dims.m
        if len(self.control_box) != m:
            raise ValueError(f"control_box must have {m} intervals")

        kernel = self.kernel_params()
        if isinstance(kernel, (LinearKernelParams, MemoryDecayKernelParams)):
            _check_matrix("kernel.a", kernel.a, (n, n))
            _check_matrix("kernel.b", kernel.b, (n, m))
        elif isinstance(kernel, LogisticMemoryKernelParams) and (n, m) != (1, 1):
            raise ValueError("logistic_memory kernel requires n = m = 1")

        x0 = self.x0_params()
        _check_vector("x0.value", x0.value, n)
        if isinstance(x0, AffineInitialParams):
            _check_vector("x0.slope", x0.slope, n)

        running = self.running_cost_params()
        if isinstance(running, QuadraticRunningParams):
            _check_vector("running_cost.q", running.q, n)
            _check_vector("running_cost.r", running.r, m)
            _check_vector("running_cost.x_target", running.x_target, n)
            _check_vector("running_cost.u_target", running.u_target, m)

        terminal = self.terminal_cost_params()
        if isinstance(terminal, QuadraticTerminalParams):
            _check_vector("terminal_cost.q", terminal.q, n)
            _check_vector("terminal_cost.target", terminal.target, n)
        elif isinstance(terminal, LinearTerminalParams):
            _check_vector("terminal_cost.c", terminal.c, n)
        return self

    def kernel_params(self) -> BaseModel:
        return _parse_form("kernel", self.kernel, KERNEL_FORMS)

    def x0_params(self) -> BaseModel:
        return _parse_form("x0", self.x0, INITIAL_FORMS)

    def running_cost_params(self) -> BaseModel:
        return _parse_form("running_cost", self.running_cost, RUNNING_COST_FORMS)

    def terminal_cost_params(self) -> BaseModel:
        return _parse_form("terminal_cost", self.terminal_cost, TERMINAL_COST_FORMS)


def _parse_form(field: str, spec: FormSpec, forms: Dict[str, Type[BaseModel]]) -> BaseModel:
    model = forms.get(spec.form)
    if model is None:
        raise ValueError(f"{field}: unknown form {spec.form!r}, expected one of {sorted(forms)}")
    return model(**spec.params)


# ============================================================================
# LOADING
# ============================================================================

def parse_problem_config(data: Dict[str, Any]) -> ProblemConfig:
    """Validate a problem configuration mapping."""
    if not isinstance(data, dict):
        raise RejectedInputError("problem configuration must be a JSON object", module="problem")
    try:
        return ProblemConfig(**data)
    except ValidationError as e:
        raise RejectedInputError(f"invalid problem configuration: {e}", module="problem") from e


def read_problem_config(path: Path) -> ProblemConfig:
    """Read and validate a problem configuration file."""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise RejectedInputError(f"problem file not found: {path}", module="problem") from e
    except json.JSONDecodeError as e:
        raise RejectedInputError(f"problem file {path} is not valid JSON: {e}", module="problem") from e
    return parse_problem_config(data)
