"""
Exhaustive Enumeration Oracle
Module ID: VDP-ORACLE-ENUM-001
Version: 0.1.0

Minimum discrete cost over every admissible lattice control sequence,
computed straight from the definition of V(0, empty history).

Sequence s encodes (beta(0), ..., beta(N-1)) in base M, beta(0) most
significant, so increasing s is lexicographic order. The space is cut into
fixed blocks; each block keeps its first minimum and blocks are reduced in
order with strict improvement, which yields the lexicographically smallest
minimizer for any worker count. States and costs are accumulated in the
same order as the backward sweep.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple

import numpy as np

from src.core.constants import ENUMERATION_BLOCK_SIZE
from src.core.errors import CapacityError, InvariantViolation, NumericalFailure, RejectedInputError
from src.discretize.dynamics import DiscreteControl, DiscreteProblem
from src.dp.constraints import ConstraintBand
from src.dp.history import digits_of
from src.dp.quantization import Quantization
from src.monitoring.logging import get_logger

logger = get_logger(__name__)


def sequence_costs(
    dp: DiscreteProblem,
    q: Quantization,
    band: Optional[ConstraintBand],
    digits: np.ndarray,
) -> np.ndarray:
    """Discrete costs of a batch of index sequences (K, N); inadmissible ones cost inf."""
    K, N = digits.shape
    u = q.points[digits]
    x = np.empty((K, N + 1, dp.state_dim))
    x[:, 0] = dp.x0_at(0)
    for i in range(1, N + 1):
        acc = np.broadcast_to(dp.x0_at(i), (K, dp.state_dim)).copy()
        for j in range(i):
            acc = acc + dp.phi(i, j, x[:, j], u[:, j])
        x[:, i] = acc
    if not np.all(np.isfinite(x)):
        raise NumericalFailure("state became non-finite during enumeration", module="oracle")

    cost = np.asarray(dp.terminal(x[:, N]), dtype=float)
    for i in range(N - 1, -1, -1):
        cost = cost + dp.stage_cost(i, x[:, i], u[:, i])
    if not np.all(np.isfinite(cost)):
        raise NumericalFailure("cost became non-finite during enumeration", module="oracle")

    if band is not None and N > 1:
        table = band.transition_table(q)
        admissible = table[digits[:, :-1], digits[:, 1:]].all(axis=1)
        cost = np.where(admissible, cost, np.inf)
    return cost


def enumerate_min(
    dp: DiscreteProblem,
    q: Quantization,
    band: Optional[ConstraintBand] = None,
    *,
    workers: int = 1,
    cap: Optional[int] = None,
    block_size: int = ENUMERATION_BLOCK_SIZE,
) -> Tuple[DiscreteControl, float]:
    """Admissible control sequence of minimum discrete cost and that cost."""
    if cap is None:
        from src.config.settings import get_settings
        cap = get_settings().oracle.enumeration_cap
    if workers < 1 or block_size < 1:
        raise RejectedInputError("workers and block_size must be at least 1", module="oracle")

    N, M = dp.N, q.M
    total = M ** N
    if total > cap:
        raise CapacityError(
            f"enumeration of {M}^{N} sequences exceeds the cap", required=total, available=cap, module="oracle"
        )
    if band is not None:
        band.transition_table(q)

    blocks = [(start, min(start + block_size, total)) for start in range(0, total, block_size)]

    def scan(block: Tuple[int, int]) -> Tuple[float, int]:
        seqs = np.arange(block[0], block[1], dtype=np.int64)
        costs = sequence_costs(dp, q, band, digits_of(seqs, N, M))
        k = int(costs.argmin())
        return float(costs[k]), int(seqs[k])

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(scan, blocks))
    else:
        results = [scan(block) for block in blocks]

    best_value, best_seq = np.inf, -1
    for value, seq in results:
        if value < best_value:
            best_value, best_seq = value, seq
    if best_seq < 0:
        raise InvariantViolation("no admissible control sequence", module="oracle")

    indices = digits_of(np.array([best_seq]), N, M)[0]
    logger.info(f"Enumerated {total} sequences: min={best_value!r}", blocks=len(blocks))
    return DiscreteControl(q.points[indices]), best_value
