"""
Operation Counts
Module ID: VDP-DP-COUNTS-001
Version: 0.1.0

Tallies of kernel, initial-function and cost evaluations plus argmin
comparisons. The sweep gives every block its own OpCounts and adds them
up in block order, so totals do not depend on the worker count.
"""

from dataclasses import asdict, dataclass, fields
from typing import Dict


@dataclass
class OpCounts:
    f_evals: int = 0
    x0_evals: int = 0
    phi_evals: int = 0
    min_comparisons: int = 0

    def __add__(self, other: "OpCounts") -> "OpCounts":
        return OpCounts(**{f.name: getattr(self, f.name) + getattr(other, f.name) for f in fields(self)})

    def __iadd__(self, other: "OpCounts") -> "OpCounts":
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))
        return self

    def to_dict(self) -> Dict[str, int]:
        return {k: int(v) for k, v in asdict(self).items()}
