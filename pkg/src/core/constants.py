"""
Core Constants and Configuration
Module ID: VDP-CONFIG-000
Version: 0.1.0

Central configuration point for all solver subsystems: paths, numeric
tolerances, capacity guards and process exit codes.

VERSION CONTROL FOOTER
File: src/core/constants.py
Version: 0.1.0
Last Modified: 2026-10-17T00:00:00Z
Git Hash: INITIAL
"""

from typing import Dict, Any
from pathlib import Path
import os

# ============================================================================
# PROJECT PATHS
# ============================================================================

PROJECT_ROOT = Path(__file__).parent.parent.parent
SRC_DIR = PROJECT_ROOT / "src"
TESTS_DIR = PROJECT_ROOT / "tests"
DOCS_DIR = PROJECT_ROOT / "docs"
CONFIGS_DIR = PROJECT_ROOT / "configs"
DEFAULT_OUT_DIR = PROJECT_ROOT / "runs"

BUILTIN_PREFIX = "builtin:"

# ============================================================================
# NUMERICS
# ============================================================================

# Band checks |u(i+1) - u(i)| <= L*h accept this much floating-point slack.
ADMISSIBILITY_TOL = 1e-12

# Slack for continuous Lipschitz checks on interpolated controls.
LIPSCHITZ_CHECK_TOL = 1e-10

# Relative agreement required between V(0, empty) and the achieved cost J^h.
VALUE_RELATIVE_TOL = 1e-10

# Relative agreement required between dp and exhaustive enumeration.
ORACLE_RELATIVE_TOL = 1e-12
ORACLE_ABSOLUTE_TOL = 1e-14

# Absolute tolerance of the adaptive quadrature behind linear references.
QUAD_TOLERANCE = 1e-10
QUAD_SUBDIVISION_LIMIT = 200

# Fine-grid references run at this multiple of the coarsest resolution studied.
FINE_GRID_FACTOR = 64

# Minimum number of resolutions for an order fit.
MIN_STUDY_POINTS = 3

# Relevant-set fixed-point iteration for state-nonlinear kernels.
RADIUS_FIXED_POINT_MAX_ITER = 500
RADIUS_FIXED_POINT_TOL = 1e-13
RADIUS_DIVERGENCE_CEILING = 1e12

# ============================================================================
# CAPACITY GUARDS
# ============================================================================

DEFAULT_MEMORY_BUDGET = 2**31  # value-table entries, all stages together
DEFAULT_ENUMERATION_CAP = 10**7  # control sequences
DEFAULT_WORKERS = 1
DEFAULT_CHUNK_SIZE = 4096  # histories per work block
ENUMERATION_BLOCK_SIZE = 16384  # sequences per enumeration block

# ============================================================================
# REPORTING
# ============================================================================

CSV_FLOAT_FORMAT = "%.17g"
DEFAULT_SEED = 0

# Cost-model comparison table ranges.
COMPARISON_N_RANGE = range(1, 11)
COMPARISON_M_VALUES = (2, 3, 4)
GROWTH_N_RANGE = range(4, 13)
GROWTH_M = 2

# ============================================================================
# LOGGING
# ============================================================================

LOG_LEVEL = os.getenv("VDP_LOG_LEVEL", "WARNING")

# ============================================================================
# EXIT CODES
# ============================================================================

EXIT_CODES: Dict[str, int] = {
    "ok": 0,
    "unexpected": 1,
    "input_error": 2,
    "capacity_error": 3,
    "numerical_failure": 4,
    "oracle_mismatch": 5,
    "invariant_violation": 70,
}

# ============================================================================
# SYSTEM CONFIGURATION OBJECT
# ============================================================================

SYSTEM_CONFIG: Dict[str, Any] = {
    "version": "0.1.0",
    "project_root": str(PROJECT_ROOT),
    "environment": os.getenv("VDP_ENV", "development"),
    "paths": {
        "project_root": str(PROJECT_ROOT),
        "src": str(SRC_DIR),
        "tests": str(TESTS_DIR),
        "docs": str(DOCS_DIR),
        "configs": str(CONFIGS_DIR),
    },
    "numerics": {
        "norm": "max",
        "admissibility_tol": ADMISSIBILITY_TOL,
        "quad_tolerance": QUAD_TOLERANCE,
        "fine_grid_factor": FINE_GRID_FACTOR,
    },
    "capacity": {
        "memory_budget": DEFAULT_MEMORY_BUDGET,
        "enumeration_cap": DEFAULT_ENUMERATION_CAP,
    },
}


def get_config() -> Dict[str, Any]:
    """Return system configuration dictionary."""
    return SYSTEM_CONFIG.copy()
