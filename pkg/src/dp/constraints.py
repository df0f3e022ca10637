"""
Admissibility Rules
Module ID: VDP-DP-CONSTRAINTS-001
Version: 0.1.0

A rule yields, for a block of stage-i histories, the mask of admissible
next controls. ConstraintBand is the Lipschitz band; other rules, such as
state-dependent ones, plug in through the same protocol.
"""

from typing import Optional, Protocol, Tuple, runtime_checkable

import numpy as np

from src.core.constants import ADMISSIBILITY_TOL
from src.core.errors import RejectedInputError
from src.dp.quantization import Quantization


@runtime_checkable
class AdmissibilityRule(Protocol):
    def admissible_mask(
        self,
        stage: int,
        codes: np.ndarray,
        prefix_states: np.ndarray,
        quantization: Quantization,
    ) -> np.ndarray:
        """Boolean (K, M) mask of admissible xi for each of the K histories."""
        ...

    def fingerprint(self) -> Tuple:
        ...


class ConstraintBand:
    """|xi - beta(i-1)|_inf <= L h + tol at stages i >= 1; everything at stage 0."""

    def __init__(self, L: float, h: float, tol: float = ADMISSIBILITY_TOL):
        if not (np.isfinite(L) and L >= 0):
            raise RejectedInputError(f"band needs L >= 0, got {L}", module="dp")
        if not (np.isfinite(h) and h > 0):
            raise RejectedInputError(f"band needs h > 0, got {h}", module="dp")
        self.L = float(L)
        self.h = float(h)
        self.tol = float(tol)
        self._table: Optional[np.ndarray] = None
        self._table_for: Optional[Quantization] = None

    @property
    def width(self) -> float:
        return self.L * self.h + self.tol

    def transition_table(self, quantization: Quantization) -> np.ndarray:
        """(M, M) mask, entry [prev, xi] true when xi may follow prev."""
        if self._table_for is not quantization:
            pts = quantization.points
            gap = np.abs(pts[:, None, :] - pts[None, :, :]).max(axis=-1)
            table = gap <= self.width
            table.setflags(write=False)
            self._table, self._table_for = table, quantization
        return self._table

    def admissible_mask(self, stage, codes, prefix_states, quantization):
        codes = np.asarray(codes, dtype=np.int64)
        if stage == 0:
            return np.ones((codes.shape[0], quantization.M), dtype=bool)
        return self.transition_table(quantization)[codes % quantization.M]

    def fingerprint(self) -> Tuple:
        return ("band", self.L, self.h, self.tol)

    def __repr__(self) -> str:
        return f"ConstraintBand(L={self.L}, h={self.h})"


def band_for(dp, tol: float = ADMISSIBILITY_TOL) -> ConstraintBand:
    """The Lipschitz band of a discrete problem."""
    return ConstraintBand(dp.problem.lipschitz_budget, dp.h, tol)
