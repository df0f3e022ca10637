"""
Cost Model Module
Module ID: VDP-COST-000
Version: 0.1.0

Exact cost recursion of the backward sweep, the published closed form,
and their comparison against instrumented runs.
"""

from src.costmodel.instrument import CounterComparison, InstrumentReport, instrument_and_compare
from src.costmodel.model import (
    COMPARISON_COLUMNS,
    CostParams,
    ParallelCost,
    RecursiveCost,
    StageTiming,
    comparison_table,
    growth_ratios,
    predict_closed_form,
    predict_parallel,
    predict_recursive,
    predicted_counts,
)

__all__ = [
    "CounterComparison",
    "InstrumentReport",
    "instrument_and_compare",
    "COMPARISON_COLUMNS",
    "CostParams",
    "ParallelCost",
    "RecursiveCost",
    "StageTiming",
    "comparison_table",
    "growth_ratios",
    "predict_closed_form",
    "predict_parallel",
    "predict_recursive",
    "predicted_counts",
]
