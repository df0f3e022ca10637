"""
Admissible Control Sampling
Module ID: VDP-ORACLE-SAMPLING-001
Version: 0.1.0

Random admissible controls for the property suites.
"""

from typing import List, Optional

import numpy as np

from src.core.errors import RejectedInputError
from src.discretize.dynamics import DiscreteControl
from src.dp.constraints import ConstraintBand
from src.dp.quantization import Quantization


def random_band_control(box, L: float, h: float, N: int, rng: np.random.Generator) -> DiscreteControl:
    """Clipped random walk in the box with steps of at most L*h per coordinate."""
    box = np.atleast_2d(np.asarray(box, dtype=float))
    if N < 1:
        raise RejectedInputError(f"need N >= 1, got {N}", module="oracle")
    lo, hi = box[:, 0], box[:, 1]
    step = float(L) * float(h)
    values = np.empty((N, box.shape[0]))
    values[0] = rng.uniform(lo, hi)
    for i in range(1, N):
        # clipping is 1-Lipschitz, so the step bound survives it
        values[i] = np.clip(values[i - 1] + rng.uniform(-step, step, size=lo.shape), lo, hi)
    return DiscreteControl(values)


def random_lattice_tail(
    q: Quantization,
    band: Optional[ConstraintBand],
    previous: Optional[int],
    length: int,
    rng: np.random.Generator,
) -> List[int]:
    """Uniformly drawn admissible index sequence continuing after index ``previous``."""
    table = band.transition_table(q) if band is not None else None
    tail: List[int] = []
    prev = previous
    for _ in range(length):
        if prev is None or table is None:
            choice = int(rng.integers(q.M))
        else:
            allowed = np.flatnonzero(table[prev])
            choice = int(allowed[rng.integers(allowed.size)])
        tail.append(choice)
        prev = choice
    return tail
