"""
Oracle Module
Module ID: VDP-ORACLE-000
Version: 0.1.0

Independent verification of the dp solver: exhaustive enumeration,
continuous references, convergence and gap studies, certificates.
"""

from src.oracle.certify import Certificate, OracleCheckReport, run_oracle_check
from src.oracle.enumeration import enumerate_min, sequence_costs
from src.oracle.reference import (
    LinearReference,
    SampledTrajectory,
    fine_grid_reference,
    fine_grid_solution,
    has_linear_reference,
    linear_reference,
    linear_reference_for,
    states_at,
)
from src.oracle.sampling import random_band_control, random_lattice_tail
from src.oracle.studies import (
    ConvergenceRow,
    ConvergenceStudy,
    GapStudy,
    convergence_study,
    fit_order,
    optimality_gap_study,
    rows_frame,
)

__all__ = [
    "Certificate",
    "OracleCheckReport",
    "run_oracle_check",
    "enumerate_min",
    "sequence_costs",
    "LinearReference",
    "SampledTrajectory",
    "fine_grid_reference",
    "fine_grid_solution",
    "has_linear_reference",
    "linear_reference",
    "linear_reference_for",
    "states_at",
    "random_band_control",
    "random_lattice_tail",
    "ConvergenceRow",
    "ConvergenceStudy",
    "GapStudy",
    "convergence_study",
    "fit_order",
    "optimality_gap_study",
    "rows_frame",
]
