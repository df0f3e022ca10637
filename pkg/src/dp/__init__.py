"""
DP Module
Module ID: VDP-DP-000
Version: 0.1.0

History-parametrized dynamic programming: quantization, history codes,
admissibility rules, the backward sweep, forward reconstruction and solve.
"""

from src.dp.constraints import AdmissibilityRule, ConstraintBand, band_for
from src.dp.counts import OpCounts
from src.dp.history import EMPTY_HISTORY, HistoryCode, ancestor, decode, digits_of, encode
from src.dp.quantization import Quantization, quantize
from src.dp.reconstruct import control_indices, forward_reconstruct, reconstruct_tail
from src.dp.solver import SolveReport, solve
from src.dp.sweep import (
    TableFingerprint,
    ValueTable,
    backward_sweep,
    check_capacity,
    load_values,
    prefix_state,
    required_entries,
)

__all__ = [
    "AdmissibilityRule",
    "ConstraintBand",
    "band_for",
    "OpCounts",
    "EMPTY_HISTORY",
    "HistoryCode",
    "ancestor",
    "decode",
    "digits_of",
    "encode",
    "Quantization",
    "quantize",
    "control_indices",
    "forward_reconstruct",
    "reconstruct_tail",
    "SolveReport",
    "solve",
    "TableFingerprint",
    "ValueTable",
    "backward_sweep",
    "check_capacity",
    "load_values",
    "prefix_state",
    "required_entries",
]
