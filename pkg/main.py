"""
Volterra DP - Main Entry Point
Module ID: VDP-MAIN-001
Version: 0.1.0

Runs the command-line front end:

    python main.py solve --problem builtin:lq --N 4 --Q 3 --band --out runs/lq

VERSION CONTROL FOOTER
File: main.py
Version: 0.1.0
Last Modified: 2026-10-17T00:00:00Z
Git Hash: INITIAL
"""

import sys
from pathlib import Path

# Add project root to path
PROJECT_ROOT = Path(__file__).parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.cli import main


if __name__ == "__main__":
    sys.exit(main())
