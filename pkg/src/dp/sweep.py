"""
History-Parametrized Backward Sweep
Module ID: VDP-DP-SWEEP-001
Version: 0.1.0

Value function V(i, beta) over control histories beta of length i:

    V(N, beta) = Phi0(x(N; N, beta))
    V(i, beta) = min over admissible xi of  V(i+1, beta xi) + Phi(i, x(i; i, beta), xi)

Prefix states x(i; i, beta) are built forward first, each stage-(i+1)
state reusing the memoized states of its ancestors, i kernel evaluations
per history. Values are then filled backward.

Parallelism: every stage is cut into fixed blocks of ``chunk_size``
histories. Blocks only read the previous stage and never each other, and
are gathered in block order, so the table is bit-identical for any worker
count. Within a block the kernel sum over j runs in increasing j.

VERSION CONTROL FOOTER
File: src/dp/sweep.py
Version: 0.1.0
Last Modified: 2026-10-17T00:00:00Z
Git Hash: INITIAL
"""

from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from src.core.errors import CapacityError, InvariantViolation, NumericalFailure, RejectedInputError
from src.discretize.dynamics import DiscreteProblem, counting
from src.dp.constraints import AdmissibilityRule
from src.dp.counts import OpCounts
from src.dp.history import HistoryCode, ancestor, decode, digits_of, stage_size
from src.dp.quantization import Quantization
from src.monitoring.logging import get_logger
from src.monitoring.metrics import STAGE_TIMER, MetricsCollector

logger = get_logger(__name__)

T = TypeVar("T")
Block = Tuple[int, int]

# History codes are int64; keep M^N well inside that range.
MAX_CODE_SPACE = 2**62


# ============================================================================
# CAPACITY
# ============================================================================

def required_entries(N: int, M: int) -> int:
    """Entries of a full value table: sum_{i=0}^{N} M^i."""
    if N < 0 or M < 1:
        raise RejectedInputError(f"need N >= 0 and M >= 1, got N={N}, M={M}", module="dp")
    return N + 1 if M == 1 else (M ** (N + 1) - 1) // (M - 1)


def check_capacity(N: int, M: int, budget: int) -> int:
    """Raise CapacityError unless the table for (N, M) fits the entry budget."""
    required = required_entries(N, M)
    if required > budget:
        raise CapacityError(
            f"value table for N={N}, M={M} exceeds the memory budget",
            required=required,
            available=budget,
            module="dp",
        )
    if M ** N >= MAX_CODE_SPACE:
        raise CapacityError(
            f"history codes for N={N}, M={M} exceed 64-bit range",
            required=M ** N,
            available=MAX_CODE_SPACE,
            module="dp",
        )
    return required


# ============================================================================
# VALUE TABLE
# ============================================================================

@dataclass(frozen=True)
class TableFingerprint:
    """Identifies the (problem, grid, quantization, constraint) a table was built for."""
    problem: str
    content: str
    N: int
    h: float
    box: Tuple[Tuple[float, float], ...]
    Q: int
    constraint: Optional[Tuple]

    @classmethod
    def of(cls, dp: DiscreteProblem, q: Quantization, rule: Optional[AdmissibilityRule]) -> "TableFingerprint":
        return cls(
            problem=dp.problem.name,
            content=dp.problem.digest(),
            N=dp.N,
            h=dp.h,
            box=tuple((float(lo), float(hi)) for lo, hi in q.box),
            Q=q.Q,
            constraint=rule.fingerprint() if rule is not None else None,
        )


@dataclass(frozen=True, eq=False)
class ValueTable:
    """
    V(i, .) for i = 0..N, argmins for i < N, and the memoized prefix states.

    Stage i arrays are indexed by history code and have M^i entries.
    """

    values: Tuple[np.ndarray, ...]
    argmin: Tuple[np.ndarray, ...]
    states: Tuple[np.ndarray, ...]
    fingerprint: TableFingerprint
    M: int
    counts: OpCounts

    @property
    def N(self) -> int:
        return len(self.values) - 1

    @property
    def value(self) -> float:
        """V(0, empty history)."""
        return float(self.values[0][0])

    def entries(self) -> int:
        return sum(v.size for v in self.values)

    def value_at(self, history: HistoryCode) -> float:
        decode(history, self.M)
        return float(self.values[history.stage][history.code])

    def state_at(self, history: HistoryCode) -> np.ndarray:
        decode(history, self.M)
        return self.states[history.stage][history.code]

    def dump(self, path: Union[str, Path]) -> Path:
        """Binary sidecar: little-endian float64, stage-major."""
        path = Path(path)
        np.concatenate(self.values).astype("<f8").tofile(path)
        return path


def load_values(path: Union[str, Path], N: int, M: int) -> List[np.ndarray]:
    """Read a sidecar written by ValueTable.dump back into per-stage arrays."""
    flat = np.fromfile(Path(path), dtype="<f8")
    expected = required_entries(N, M)
    if flat.size != expected:
        raise RejectedInputError(
            f"{path} holds {flat.size} values, expected {expected} for N={N}, M={M}", module="dp"
        )
    offsets = np.cumsum([0] + [stage_size(i, M) for i in range(N + 1)])
    return [flat[offsets[i]:offsets[i + 1]].astype(float) for i in range(N + 1)]


# ============================================================================
# PREFIX STATES
# ============================================================================

def prefix_state(dp: DiscreteProblem, q: Quantization, history: HistoryCode) -> np.ndarray:
    """x(i; i, beta): the stage-i state determined by the prefix alone."""
    beta = decode(history, q.M)
    if history.stage > dp.N:
        raise RejectedInputError(f"stage {history.stage} beyond N={dp.N}", module="dp")
    u = q.points[list(beta)] if beta else np.empty((0, q.m))
    x = [dp.x0_at(0).copy()]
    for k in range(1, history.stage + 1):
        acc = dp.x0_at(k).copy()
        for j in range(k):
            acc = acc + dp.phi(k, j, x[j], u[j])
        if not np.all(np.isfinite(acc)):
            raise NumericalFailure(f"prefix state became non-finite: {acc}", module="dp", stage=k)
        x.append(acc)
    return x[history.stage]


def _extend_states(
    dp: DiscreteProblem,
    q: Quantization,
    states: Sequence[np.ndarray],
    x0: np.ndarray,
    stage: int,
    block: Block,
) -> Tuple[np.ndarray, OpCounts]:
    """States of the stage histories with codes in block, from ancestor states."""
    M = q.M
    codes = np.arange(block[0], block[1], dtype=np.int64)
    controls = digits_of(codes, stage, M)
    acc = np.broadcast_to(x0, (codes.size, dp.state_dim)).copy()
    with counting(OpCounts()) as tally:
        for j in range(stage):
            parents = ancestor(codes, stage, j, M)
            acc = acc + dp.phi(stage, j, states[j][parents], q.points[controls[:, j]])
    if not np.all(np.isfinite(acc)):
        bad = int(codes[~np.isfinite(acc).all(axis=1)][0])
        raise NumericalFailure(
            f"prefix state became non-finite for history code {bad}", module="dp", stage=stage
        )
    return acc, tally


def _minimize_block(
    dp: DiscreteProblem,
    q: Quantization,
    rule: Optional[AdmissibilityRule],
    stage: int,
    stage_states: np.ndarray,
    next_values: np.ndarray,
    block: Block,
) -> Tuple[np.ndarray, np.ndarray, OpCounts]:
    """V(stage, .), argmins and the evaluation tally for the codes in block."""
    M = q.M
    codes = np.arange(block[0], block[1], dtype=np.int64)
    K = codes.size
    x = stage_states[block[0]:block[1]]
    children = next_values.reshape(-1, M)[block[0]:block[1]]
    xb = np.broadcast_to(x[:, None, :], (K, M, dp.state_dim))
    ub = np.broadcast_to(q.points[None, :, :], (K, M, q.m))
    with counting(OpCounts()) as tally:
        candidates = children + dp.stage_cost(stage, xb, ub)

    if rule is not None:
        mask = np.asarray(rule.admissible_mask(stage, codes, x, q), dtype=bool)
        if mask.shape != (K, M):
            raise InvariantViolation(
                f"admissibility mask has shape {mask.shape}, expected {(K, M)}", module="dp", stage=stage
            )
        empty = ~mask.any(axis=1)
        if empty.any():
            raise InvariantViolation(
                f"empty admissible set for history code {int(codes[empty][0])}", module="dp", stage=stage
            )
        candidates = np.where(mask, candidates, np.inf)

    # argmin returns the first minimum: lowest control index wins ties
    choice = candidates.argmin(axis=1)
    tally.min_comparisons += K * (M - 1)
    best = candidates[np.arange(K), choice]
    if not np.all(np.isfinite(best)):
        bad = int(codes[~np.isfinite(best)][0])
        raise NumericalFailure(f"value became non-finite for history code {bad}", module="dp", stage=stage)
    return best, choice.astype(np.int64), tally


# ============================================================================
# SWEEP
# ============================================================================

def _blocks(total: int, chunk_size: int) -> List[Block]:
    return [(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]


def _run_blocks(
    executor: Optional[ThreadPoolExecutor],
    fn: Callable[[Block], T],
    blocks: List[Block],
) -> List[T]:
    if executor is None or len(blocks) == 1:
        return [fn(block) for block in blocks]
    return list(executor.map(fn, blocks))


def _settings_default(name: str, value: Optional[int]) -> int:
    if value is not None:
        return value
    from src.config.settings import get_settings
    return getattr(get_settings().solver, name)


def backward_sweep(
    dp: DiscreteProblem,
    q: Quantization,
    band: Optional[AdmissibilityRule] = None,
    *,
    workers: Optional[int] = None,
    chunk_size: Optional[int] = None,
    memory_budget: Optional[int] = None,
    metrics: Optional[MetricsCollector] = None,
) -> ValueTable:
    """Fill the value table for dp under quantization q and an optional admissibility rule."""
    workers = _settings_default("workers", workers)
    chunk_size = _settings_default("chunk_size", chunk_size)
    memory_budget = _settings_default("memory_budget", memory_budget)
    if workers < 1 or chunk_size < 1:
        raise RejectedInputError("workers and chunk_size must be at least 1", module="dp")
    if q.m != dp.control_dim:
        raise RejectedInputError(
            f"quantization has m={q.m}, problem has m={dp.control_dim}", module="dp"
        )

    N, M = dp.N, q.M
    entries = check_capacity(N, M, memory_budget)
    if hasattr(band, "transition_table"):
        band.transition_table(q)

    counts = OpCounts()
    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None

    with logger.context(operation="backward_sweep"):
        logger.info(
            f"Sweep start: N={N}, M={M}, entries={entries}, workers={workers}",
            problem=dp.problem.name,
            band=band is not None,
        )
        try:
            with counting(counts):
                states: List[np.ndarray] = [dp.x0_at(0)[None, :].copy()]
            for stage in range(1, N + 1):
                with counting(counts):
                    x0 = dp.x0_at(stage)
                blocks = _blocks(stage_size(stage, M), chunk_size)
                parts = _run_blocks(
                    executor, lambda b, s=stage, x=x0: _extend_states(dp, q, states, x, s, b), blocks
                )
                states.append(np.concatenate([p[0] for p in parts]))
                for _, tally in parts:
                    counts += tally

            with counting(counts):
                terminal = dp.terminal(states[N])
            if not np.all(np.isfinite(terminal)):
                raise NumericalFailure("terminal cost became non-finite", module="dp", stage=N)
            values: List[np.ndarray] = [np.empty(0)] * N + [np.asarray(terminal, dtype=float)]
            argmin: List[np.ndarray] = [np.empty(0, dtype=np.int64)] * N

            for stage in range(N - 1, -1, -1):
                timer = metrics.context_timer(STAGE_TIMER, {"stage": str(stage)}) if metrics else nullcontext()
                with logger.context(stage=stage), timer:
                    blocks = _blocks(stage_size(stage, M), chunk_size)
                    parts = _run_blocks(
                        executor,
                        lambda b, s=stage: _minimize_block(dp, q, band, s, states[s], values[s + 1], b),
                        blocks,
                    )
                    values[stage] = np.concatenate([p[0] for p in parts])
                    argmin[stage] = np.concatenate([p[1] for p in parts])
                    for *_, tally in parts:
                        counts += tally
                    logger.debug(
                        f"Stage {stage} done: {stage_size(stage, M)} histories, {len(blocks)} blocks"
                    )
        finally:
            if executor is not None:
                executor.shutdown(wait=True)

        for arr in (*values, *argmin, *states):
            arr.setflags(write=False)
        table = ValueTable(
            values=tuple(values),
            argmin=tuple(argmin),
            states=tuple(states),
            fingerprint=TableFingerprint.of(dp, q, band),
            M=M,
            counts=counts,
        )
        logger.info(f"Sweep done: V(0)={table.value!r}", counts=counts.to_dict())
    if metrics:
        metrics.record_counts(counts.to_dict())
    return table
