"""
Forward Reconstruction
Module ID: VDP-DP-RECONSTRUCT-001
Version: 0.1.0

Starting from a history, each stage picks the lowest-index minimizer of
V(i+1, beta xi) + Phi(i, x(i; i, beta), xi) over admissible xi and appends it.
The choice is recomputed from V and cross-checked against the argmin the
sweep recorded.
"""

from typing import List, Optional

import numpy as np

from src.core.errors import InvariantViolation, RejectedInputError
from src.discretize.dynamics import DiscreteControl, DiscreteProblem
from src.dp.constraints import AdmissibilityRule
from src.dp.history import EMPTY_HISTORY, HistoryCode, decode
from src.dp.quantization import Quantization
from src.dp.sweep import TableFingerprint, ValueTable


def _check_table(table: ValueTable, dp: DiscreteProblem, q: Quantization, band: Optional[AdmissibilityRule]) -> None:
    expected = TableFingerprint.of(dp, q, band)
    if table.fingerprint != expected:
        raise RejectedInputError(
            f"value table was built for {table.fingerprint}, not {expected}", module="dp"
        )


def reconstruct_tail(
    table: ValueTable,
    dp: DiscreteProblem,
    q: Quantization,
    band: Optional[AdmissibilityRule],
    start: HistoryCode,
) -> List[int]:
    """Optimal control indices for stages start.stage..N-1 after the prefix ``start``."""
    _check_table(table, dp, q, band)
    decode(start, q.M)
    M = q.M
    code = start.code
    tail: List[int] = []
    for stage in range(start.stage, dp.N):
        x = table.states[stage][code]
        xb = np.broadcast_to(x, (M, dp.state_dim))
        candidates = table.values[stage + 1][code * M:(code + 1) * M] + dp.stage_cost(stage, xb, q.points)
        if band is not None:
            mask = band.admissible_mask(stage, np.array([code], dtype=np.int64), x[None, :], q)[0]
            candidates = np.where(mask, candidates, np.inf)
        choice = int(candidates.argmin())
        if choice != int(table.argmin[stage][code]):
            raise InvariantViolation(
                f"reconstruction picked {choice}, sweep recorded {int(table.argmin[stage][code])}",
                module="dp",
                stage=stage,
            )
        tail.append(choice)
        code = code * M + choice
    return tail


def forward_reconstruct(
    table: ValueTable,
    dp: DiscreteProblem,
    q: Quantization,
    band: Optional[AdmissibilityRule] = None,
) -> DiscreteControl:
    """The optimal open-loop control u*(0..N-1) encoded by the table."""
    indices = reconstruct_tail(table, dp, q, band, EMPTY_HISTORY)
    return DiscreteControl(q.points[indices])


def control_indices(c: DiscreteControl, q: Quantization) -> List[int]:
    """Lattice indices of a control whose values all lie on q."""
    return [q.index_of(u) for u in c.values]
