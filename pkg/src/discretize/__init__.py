"""
Discretize Module
Module ID: VDP-DISCRETIZE-000
Version: 0.1.0

Euler grid, discrete dynamics and cost, interpolation, CSV I/O.
"""

from src.discretize.dynamics import (
    DiscreteControl,
    DiscreteProblem,
    Trajectory,
    discrete_cost,
    discretize,
    forward_solve,
    stage_costs,
    tail_cost,
)
from src.discretize.grid import Grid, make_grid
from src.discretize.interpolation import (
    ConstantControl,
    InterpolatedControl,
    RampControl,
    check_continuous_control,
    check_lipschitz_admissible,
    interpolate,
    sample_control,
)
from src.discretize.io import (
    read_control_csv,
    read_trajectory_csv,
    write_control_csv,
    write_trajectory_csv,
)

__all__ = [
    "DiscreteControl",
    "DiscreteProblem",
    "Trajectory",
    "discrete_cost",
    "discretize",
    "forward_solve",
    "stage_costs",
    "tail_cost",
    "Grid",
    "make_grid",
    "ConstantControl",
    "InterpolatedControl",
    "RampControl",
    "check_continuous_control",
    "check_lipschitz_admissible",
    "interpolate",
    "sample_control",
    "read_control_csv",
    "read_trajectory_csv",
    "write_control_csv",
    "write_trajectory_csv",
]
