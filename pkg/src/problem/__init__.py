"""
Problem Module
Module ID: VDP-PROBLEM-000
Version: 0.1.0

Continuous controlled-Volterra problem instances, the kernel and cost
library, and relevant-set estimators.
"""

from src.problem.bounds import (
    RelevantSet,
    estimate_relevant_set,
    relevant_radius_growth,
    relevant_radius_lipschitz,
)
from src.problem.kernels import (
    CallableKernel,
    Kernel,
    LinearKernel,
    LogisticMemoryKernel,
    MemoryDecayKernel,
)
from src.problem.library import (
    BUILTIN_PROBLEMS,
    builtin_config,
    builtin_names,
    builtin_problem,
    load_problem,
)
from src.problem.model import VolterraProblem, eval_kernel, problem_from_config, problem_from_dict
from src.problem.schema import ProblemConfig, parse_problem_config, read_problem_config

__all__ = [
    "RelevantSet",
    "estimate_relevant_set",
    "relevant_radius_growth",
    "relevant_radius_lipschitz",
    "CallableKernel",
    "Kernel",
    "LinearKernel",
    "LogisticMemoryKernel",
    "MemoryDecayKernel",
    "BUILTIN_PROBLEMS",
    "builtin_config",
    "builtin_names",
    "builtin_problem",
    "load_problem",
    "VolterraProblem",
    "eval_kernel",
    "problem_from_config",
    "problem_from_dict",
    "ProblemConfig",
    "parse_problem_config",
    "read_problem_config",
]
