"""
Volterra DP - Package Root
Module ID: VDP-MAIN-000
Version: 0.1.0

History-parametrized dynamic programming for optimal control of systems
governed by Volterra integral equations, with independent oracles and a
computational cost model.

VERSION CONTROL FOOTER
File: src/__init__.py
Version: 0.1.0
Last Modified: 2026-10-17T00:00:00Z
Git Hash: INITIAL
"""

__version__ = "0.1.0"
__author__ = "Volterra DP Development Team"

from src.core.constants import SYSTEM_CONFIG

__all__ = [
    "SYSTEM_CONFIG",
]
