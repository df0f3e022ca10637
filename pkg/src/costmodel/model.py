"""
Computational Cost Model
Module ID: VDP-COST-MODEL-001
Version: 0.1.0

Cost of the history-parametrized sweep. With C_Phi0 + i C_Phi1 the cost of
one Phi evaluation at stage i and A the per-history optimization and
interpolation cost, the backward recursion is

    phi(N) = M^{N+1} (C_Phi0 + N C_Phi1)
    phi(i) = phi(i+1) + M^{i+1} (C_Phi0 + i C_Phi1) + M^i A

and the reported total is sum_{i=1}^{N} phi(i). A published three-term
closed form of that total is evaluated separately; comparison_table puts
the two side by side without reconciling them.

All arithmetic is exact (int / Fraction).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Iterable, List, Tuple, Union

import pandas as pd

from src.core.constants import COMPARISON_M_VALUES, COMPARISON_N_RANGE, GROWTH_M, GROWTH_N_RANGE
from src.core.errors import RejectedInputError
from src.dp.counts import OpCounts

Exact = Union[int, Fraction]

COMPARISON_COLUMNS = ["N", "M", "recursive_total", "closed_form_total", "delta"]


def _exact(value: Real) -> Fraction:
    return Fraction(value)


def _plain(value: Fraction) -> Exact:
    return int(value) if value.denominator == 1 else value


def _as_number(value: Exact) -> Union[int, float]:
    """int when integral, float otherwise; for tables and JSON."""
    value = Fraction(value)
    return int(value) if value.denominator == 1 else float(value)


@dataclass(frozen=True)
class CostParams:
    N: int
    M: int
    c_phi0: Real = 1
    c_phi1: Real = 0
    a: Real = 0
    phi_comm: Real = 0
    phi_sel: Real = 0

    def __post_init__(self):
        for name in ("N", "M"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise RejectedInputError(f"{name} must be an integer, got {value!r}", module="costmodel")
        if self.N < 0:
            raise RejectedInputError(f"N must be non-negative, got {self.N}", module="costmodel")
        if self.M < 1:
            raise RejectedInputError(f"M must be at least 1, got {self.M}", module="costmodel")
        for name in ("c_phi0", "c_phi1", "a", "phi_comm", "phi_sel"):
            value = getattr(self, name)
            if not isinstance(value, Real) or not value >= 0:
                raise RejectedInputError(f"{name} must be a non-negative number, got {value!r}", module="costmodel")

    def phi_cost(self, i: int) -> Fraction:
        """Cost of one Phi evaluation at stage i."""
        return _exact(self.c_phi0) + i * _exact(self.c_phi1)

    @classmethod
    def counting(cls, N: int, M: int) -> "CostParams":
        """Configuration in which the cost is the number of Phi evaluations."""
        return cls(N=N, M=M, c_phi0=1, c_phi1=0, a=0)


@dataclass
class RecursiveCost:
    """phi(i) for i = 0..N, the summed total, and the work a sweep executes."""
    stage_costs: List[Exact]
    total: Exact
    executed_total: Exact

    def to_dict(self) -> dict:
        return {
            "stage_costs": [_as_number(c) for c in self.stage_costs],
            "total": _as_number(self.total),
            "executed_total": _as_number(self.executed_total),
        }


@dataclass
class StageTiming:
    stage: int
    time: Exact
    processors: int


@dataclass
class ParallelCost:
    stages: List[StageTiming] = field(default_factory=list)

    @property
    def makespan(self) -> Exact:
        return _plain(sum((Fraction(s.time) for s in self.stages), Fraction(0)))

    @property
    def peak_processors(self) -> int:
        return max((s.processors for s in self.stages), default=0)


def _increment(params: CostParams, i: int) -> Fraction:
    M = params.M
    return M ** (i + 1) * params.phi_cost(i) + M ** i * _exact(params.a)


def predict_recursive(params: CostParams) -> RecursiveCost:
    N, M = params.N, params.M
    costs: List[Fraction] = [Fraction(0)] * (N + 1)
    costs[N] = M ** (N + 1) * params.phi_cost(N)
    for i in range(N - 1, -1, -1):
        costs[i] = costs[i + 1] + _increment(params, i)

    total = sum(costs[1:], Fraction(0))
    # one pass over the stages plus M^N terminal evaluations
    executed = sum((_increment(params, i) for i in range(N)), Fraction(0)) + M ** N * params.phi_cost(N)
    return RecursiveCost(
        stage_costs=[_plain(c) for c in costs],
        total=_plain(total),
        executed_total=_plain(executed),
    )


def predict_closed_form(params: CostParams) -> Exact:
    """Published three-term closed form of the recursive total; M >= 2."""
    N, M = params.N, params.M
    if M == 1:
        raise RejectedInputError("closed form divides by M - 1; use predict_recursive for M = 1", module="costmodel")
    d = M - 1
    t0 = Fraction(N * M ** (N + 2) - (N + 1) * M ** (N + 1) + M, d ** 2)
    t1 = Fraction(
        N ** 2 * M ** (N + 3)
        - (2 * N ** 2 + 2 * N - 1) * M ** (N + 2)
        + (N + 1) ** 2 * M ** (N + 1)
        - M ** 2
        - M,
        d ** 3,
    )
    ta = Fraction((N - 1) * M ** (N + 1) - N * M ** N + M, d ** 2)
    return _plain(_exact(params.c_phi0) * t0 + _exact(params.c_phi1) * t1 + _exact(params.a) * ta)


def predict_parallel(params: CostParams) -> ParallelCost:
    """Per-stage time phi(i) + phi_comm + phi_sel with M^i active processors."""
    recursive = predict_recursive(params)
    overhead = _exact(params.phi_comm) + _exact(params.phi_sel)
    return ParallelCost(
        stages=[
            StageTiming(stage=i, time=_plain(Fraction(cost) + overhead), processors=params.M ** i)
            for i, cost in enumerate(recursive.stage_costs)
        ]
    )


def predicted_counts(N: int, M: int) -> OpCounts:
    """Operation counts of one backward sweep with memoized prefix states."""
    return OpCounts(
        f_evals=sum(i * M ** i for i in range(1, N + 1)),
        x0_evals=N + 1,
        phi_evals=sum(M ** (i + 1) for i in range(N)) + M ** N,
        min_comparisons=sum(M ** i * (M - 1) for i in range(N)),
    )


def comparison_table(
    N_range: Iterable[int] = COMPARISON_N_RANGE,
    M_values: Iterable[int] = COMPARISON_M_VALUES,
    c_phi0: Real = 1,
    c_phi1: Real = 1,
    a: Real = 1,
) -> pd.DataFrame:
    """Recursive total against the closed form over a grid of (N, M)."""
    rows = []
    for M in M_values:
        for N in N_range:
            params = CostParams(N=N, M=M, c_phi0=c_phi0, c_phi1=c_phi1, a=a)
            recursive = Fraction(predict_recursive(params).total)
            closed = Fraction(predict_closed_form(params))
            rows.append(
                {
                    "N": N,
                    "M": M,
                    "recursive_total": _as_number(recursive),
                    "closed_form_total": _as_number(closed),
                    "delta": _as_number(closed - recursive),
                }
            )
    return pd.DataFrame(rows, columns=COMPARISON_COLUMNS)


def growth_ratios(
    M: int = GROWTH_M,
    N_range: Iterable[int] = GROWTH_N_RANGE,
    c_phi0: Real = 1,
    c_phi1: Real = 1,
    a: Real = 1,
) -> List[Tuple[int, float]]:
    """total / (N^2 M^N); tends to a positive constant for fixed M."""
    ratios = []
    for N in N_range:
        if N < 1:
            raise RejectedInputError(f"growth ratio needs N >= 1, got {N}", module="costmodel")
        total = predict_recursive(CostParams(N=N, M=M, c_phi0=c_phi0, c_phi1=c_phi1, a=a)).total
        ratios.append((N, float(Fraction(total) / (N ** 2 * M ** N))))
    return ratios
