"""
Problem Library
Module ID: VDP-PROBLEM-LIBRARY-001
Version: 0.1.0

Each entry is a plain configuration mapping, validated by the same schema
as user files. The JSON files under configs/ carry the same content.
"""

import copy
from pathlib import Path
from typing import Any, Dict, List, Union

from src.core.constants import BUILTIN_PREFIX
from src.core.errors import RejectedInputError
from src.problem.model import VolterraProblem, problem_from_config, problem_from_dict
from src.problem.schema import read_problem_config

BUILTIN_PROBLEMS: Dict[str, Dict[str, Any]] = {
    # Everything vanishes.
    "zero": {
        "name": "zero",
        "kernel": {"form": "linear", "params": {"a": [[0.0]], "b": [[0.0]]}},
        "x0": {"form": "constant", "params": {"value": [0.0]}},
        "running_cost": {"form": "constant", "params": {"value": 0.0}},
        "terminal_cost": {"form": "constant", "params": {"value": 0.0}},
        "horizon": 1.0,
        "control_box": [[0.0, 1.0]],
        "lipschitz_budget": 1.0,
        "dims": {"n": 1, "m": 1},
    },
    # Pure integrator steered towards 1: optimum u = 0.5, value 0.5.
    "lq": {
        "name": "lq",
        "kernel": {"form": "linear", "params": {"a": [[0.0]], "b": [[1.0]]}},
        "x0": {"form": "constant", "params": {"value": [0.0]}},
        "running_cost": {"form": "quadratic", "params": {"q": [0.0], "r": [1.0]}},
        "terminal_cost": {"form": "quadratic", "params": {"q": [1.0], "target": [1.0]}},
        "horizon": 1.0,
        "control_box": [[0.0, 1.0]],
        "lipschitz_budget": 2.0,
        "dims": {"n": 1, "m": 1},
    },
    # x' = x + u from x = 1.
    "linear_growth": {
        "name": "linear_growth",
        "kernel": {"form": "linear", "params": {"a": [[1.0]], "b": [[1.0]]}},
        "x0": {"form": "constant", "params": {"value": [1.0]}},
        "running_cost": {"form": "quadratic", "params": {"q": [1.0], "r": [1.0]}},
        "terminal_cost": {"form": "quadratic", "params": {"q": [1.0]}},
        "horizon": 1.0,
        "control_box": [[0.0, 1.0]],
        "lipschitz_budget": 1.0,
        "dims": {"n": 1, "m": 1},
    },
    # Damped oscillator with fading memory, force on the second component.
    "memory_decay": {
        "name": "memory_decay",
        "kernel": {
            "form": "memory_decay",
            "params": {"a": [[0.0, 1.0], [-1.0, 0.0]], "b": [[0.0], [1.0]], "kappa": 1.0},
        },
        "x0": {"form": "constant", "params": {"value": [1.0, 0.0]}},
        "running_cost": {"form": "quadratic", "params": {"q": [1.0, 1.0], "r": [0.1]}},
        "terminal_cost": {"form": "quadratic", "params": {"q": [1.0, 1.0]}},
        "horizon": 1.0,
        "control_box": [[-1.0, 1.0]],
        "lipschitz_budget": 2.0,
        "dims": {"n": 2, "m": 1},
    },
    # Population with memory, harvested towards 0.3.
    "logistic_memory": {
        "name": "logistic_memory",
        "kernel": {"form": "logistic_memory", "params": {"c": 0.5, "kappa": 1.0, "b": 0.1}},
        "x0": {"form": "constant", "params": {"value": [0.1]}},
        "running_cost": {
            "form": "quadratic",
            "params": {"q": [1.0], "r": [0.05], "x_target": [0.3]},
        },
        "terminal_cost": {"form": "quadratic", "params": {"q": [1.0], "target": [0.3]}},
        "horizon": 1.0,
        "control_box": [[0.0, 1.0]],
        "lipschitz_budget": 1.0,
        "dims": {"n": 1, "m": 1},
    },
}


def builtin_names() -> List[str]:
    return sorted(BUILTIN_PROBLEMS)


def builtin_config(name: str) -> Dict[str, Any]:
    """A fresh copy of a built-in configuration mapping."""
    if name not in BUILTIN_PROBLEMS:
        raise RejectedInputError(
            f"unknown built-in problem {name!r}, expected one of {builtin_names()}", module="problem"
        )
    return copy.deepcopy(BUILTIN_PROBLEMS[name])


def builtin_problem(name: str, /, **overrides: Any) -> VolterraProblem:
    """Instantiate a built-in problem, optionally overriding top-level fields."""
    data = builtin_config(name)
    data.update(overrides)
    return problem_from_dict(data)


def load_problem(ref: Union[str, Path]) -> VolterraProblem:
    """Load a problem from a JSON file path or a ``builtin:<name>`` reference."""
    ref_str = str(ref)
    if ref_str.startswith(BUILTIN_PREFIX):
        return builtin_problem(ref_str[len(BUILTIN_PREFIX):])
    path = Path(ref_str)
    cfg = read_problem_config(path)
    return problem_from_config(cfg, name=cfg.name or path.stem)
