"""
Core Subsystems Module
Module ID: VDP-CORE-000
Version: 0.1.0

Exports core constants, error types and utilities.

VERSION CONTROL FOOTER
File: src/core/__init__.py
Version: 0.1.0
Last Modified: 2026-10-17T00:00:00Z
Git Hash: INITIAL
"""

from src.core.constants import (
    SYSTEM_CONFIG,
    PROJECT_ROOT,
    SRC_DIR,
    TESTS_DIR,
    DOCS_DIR,
    CONFIGS_DIR,
    EXIT_CODES,
    get_config,
)

from src.core.errors import (
    VolterraDPError,
    RejectedInputError,
    CapacityError,
    NumericalFailure,
    OracleMismatch,
    InvariantViolation,
)

__all__ = [
    "SYSTEM_CONFIG",
    "PROJECT_ROOT",
    "SRC_DIR",
    "TESTS_DIR",
    "DOCS_DIR",
    "CONFIGS_DIR",
    "EXIT_CODES",
    "get_config",
    "VolterraDPError",
    "RejectedInputError",
    "CapacityError",
    "NumericalFailure",
    "OracleMismatch",
    "InvariantViolation",
]
