"""
History Codes
Module ID: VDP-DP-HISTORY-001
Version: 0.1.0

A control prefix beta = (beta(0), ..., beta(i-1)) of quantized indices is
stored as the base-M integer with beta(0) as the most significant digit.
Appending xi to the code c gives c * M + xi, so the children of c occupy
the contiguous block [c M, c M + M) of the next stage, and numeric order
of codes equals lexicographic order of prefixes.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from src.core.errors import RejectedInputError


@dataclass(frozen=True)
class HistoryCode:
    stage: int
    code: int

    def digits(self, M: int) -> Tuple[int, ...]:
        return decode(self, M)

    def extend(self, xi: int, M: int) -> "HistoryCode":
        if not 0 <= xi < M:
            raise RejectedInputError(f"control index {xi} outside 0..{M - 1}", module="dp")
        return HistoryCode(self.stage + 1, self.code * M + xi)


EMPTY_HISTORY = HistoryCode(0, 0)


def stage_size(stage: int, M: int) -> int:
    return M ** stage


def encode(beta: Sequence[int], M: int) -> HistoryCode:
    code = 0
    for digit in beta:
        digit = int(digit)
        if not 0 <= digit < M:
            raise RejectedInputError(f"control index {digit} outside 0..{M - 1}", module="dp")
        code = code * M + digit
    return HistoryCode(len(beta), code)


def decode(history: HistoryCode, M: int) -> Tuple[int, ...]:
    if not 0 <= history.code < stage_size(history.stage, M):
        raise RejectedInputError(
            f"code {history.code} invalid at stage {history.stage} with M={M}", module="dp"
        )
    digits = []
    code = history.code
    for _ in range(history.stage):
        code, digit = divmod(code, M)
        digits.append(digit)
    return tuple(reversed(digits))


def digits_of(codes: np.ndarray, stage: int, M: int) -> np.ndarray:
    """Vectorized decode: (K,) codes at a stage -> (K, stage) digit array."""
    codes = np.asarray(codes, dtype=np.int64)
    powers = M ** np.arange(stage - 1, -1, -1, dtype=np.int64)
    return (codes[:, None] // powers) % M


def ancestor(codes: np.ndarray, stage: int, at: int, M: int) -> np.ndarray:
    """Code of the length-``at`` prefix of histories given at ``stage``."""
    return np.asarray(codes, dtype=np.int64) // (M ** (stage - at))
