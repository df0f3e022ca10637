"""
Control and Trajectory Files
Module ID: VDP-DISCRETIZE-IO-001
Version: 0.1.0

Headers are ``i,t,u_1..u_m`` and ``i,t,x_1..x_n``. Floats are written with
17 significant digits and read back with pandas' round-trip parser, so a
written control reads back bit for bit.
"""

from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from src.core.constants import CSV_FLOAT_FORMAT
from src.core.errors import RejectedInputError
from src.discretize.dynamics import DiscreteControl, Trajectory
from src.discretize.grid import Grid

PathLike = Union[str, Path]


def _frame(prefix: str, values: np.ndarray, times: np.ndarray) -> pd.DataFrame:
    frame = pd.DataFrame({"i": np.arange(values.shape[0]), "t": times})
    for k in range(values.shape[1]):
        frame[f"{prefix}_{k + 1}"] = values[:, k]
    return frame


def write_control_csv(path: PathLike, c: DiscreteControl, grid: Grid) -> Path:
    if c.N != grid.N:
        raise RejectedInputError(f"control has {c.N} values, grid has N={grid.N}", module="discretize")
    path = Path(path)
    _frame("u", c.values, grid.nodes[:-1]).to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    return path


def write_trajectory_csv(path: PathLike, traj: Trajectory, grid: Grid) -> Path:
    if traj.N != grid.N:
        raise RejectedInputError(f"trajectory has {traj.N + 1} states, grid has N={grid.N}", module="discretize")
    path = Path(path)
    _frame("x", traj.states, grid.nodes).to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    return path


def _read_columns(path: PathLike, prefix: str) -> np.ndarray:
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise RejectedInputError(f"cannot read {path}: {e}", module="discretize") from e
    columns = [col for col in frame.columns if col.startswith(f"{prefix}_")]
    if not columns or not {"i", "t"} <= set(frame.columns):
        raise RejectedInputError(f"{path} lacks the i,t,{prefix}_k header", module="discretize")
    columns.sort(key=lambda col: int(col.split("_", 1)[1]))
    frame = frame.sort_values("i")
    return frame[columns].to_numpy(dtype=float)


def read_control_csv(path: PathLike) -> DiscreteControl:
    return DiscreteControl(_read_columns(path, "u"))


def read_trajectory_csv(path: PathLike) -> Trajectory:
    return Trajectory(_read_columns(path, "x"))
