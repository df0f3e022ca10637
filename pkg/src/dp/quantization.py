"""
Control Quantization
Module ID: VDP-DP-QUANT-001
Version: 0.1.0

Q levels per coordinate, M = Q^m lattice points. Control index k maps to
the lattice point whose coordinate digits are k written in base Q, first
coordinate most significant.
"""

from dataclasses import dataclass, field

import numpy as np

from src.core.errors import RejectedInputError


@dataclass(frozen=True, eq=False)
class Quantization:
    box: np.ndarray
    Q: int
    levels: np.ndarray = field(init=False, repr=False)
    points: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        box = np.atleast_2d(np.array(self.box, dtype=float))
        Q = self.Q
        if isinstance(Q, bool) or int(Q) != Q or Q < 1:
            raise RejectedInputError(f"Q must be a positive integer, got {Q}", module="dp")
        Q = int(Q)
        if Q == 1 and np.any(box[:, 0] != box[:, 1]):
            raise RejectedInputError("Q = 1 requires a degenerate control box (a_k = b_k)", module="dp")

        # levels[k, q] = a_k + q (b_k - a_k) / (Q - 1)
        levels = np.stack([np.linspace(lo, hi, Q) for lo, hi in box])
        m = box.shape[0]
        digits = np.indices((Q,) * m).reshape(m, -1).T
        points = levels[np.arange(m), digits]

        for name, arr in (("box", box), ("levels", levels), ("points", points)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "Q", Q)

    @property
    def m(self) -> int:
        return self.box.shape[0]

    @property
    def M(self) -> int:
        return self.Q ** self.m

    def point(self, index: int) -> np.ndarray:
        if not 0 <= index < self.M:
            raise RejectedInputError(f"control index {index} outside 0..{self.M - 1}", module="dp")
        return self.points[index]

    def index_of(self, u: np.ndarray, tol: float = 1e-12) -> int:
        """Inverse of point(); u must coincide with a lattice point."""
        distance = np.abs(self.points - np.asarray(u, dtype=float)).max(axis=1)
        index = int(distance.argmin())
        if distance[index] > tol:
            raise RejectedInputError(f"{u} is not a lattice point", module="dp")
        return index


def quantize(box, Q: int) -> Quantization:
    """Uniform lattice with both endpoints on every coordinate."""
    return Quantization(box=box, Q=Q)
