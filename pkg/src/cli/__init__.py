"""
CLI Module
Module ID: VDP-CLI-000
Version: 0.1.0

Command-line interface.
"""

from src.cli.app import RunConfig, build_parser, main, parse_run_config, run

__all__ = ["RunConfig", "build_parser", "main", "parse_run_config", "run"]
