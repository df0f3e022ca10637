"""
Configuration Management System
Module ID: VDP-CONFIG-001
Version: 0.1.0

Centralized runtime configuration with environment-specific settings
and validation. Problem instances are configured separately (see
src/problem/schema.py); this module only governs how runs execute.
"""

import os
import json
import logging
from pathlib import Path
from typing import Dict, Any, List, Optional
from dataclasses import dataclass, asdict
from enum import Enum

from src.core.constants import (
    ADMISSIBILITY_TOL,
    CSV_FLOAT_FORMAT,
    DEFAULT_CHUNK_SIZE,
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_MEMORY_BUDGET,
    DEFAULT_OUT_DIR,
    DEFAULT_WORKERS,
    FINE_GRID_FACTOR,
    LOG_LEVEL,
    ORACLE_RELATIVE_TOL,
    QUAD_TOLERANCE,
)
from src.core.errors import RejectedInputError

logger = logging.getLogger(__name__)


class Environment(Enum):
    """Supported run environments."""
    DEVELOPMENT = "development"
    TESTING = "testing"
    CI = "ci"


@dataclass
class SolverConfig:
    """Backward-sweep execution settings."""
    memory_budget: int = DEFAULT_MEMORY_BUDGET
    workers: int = DEFAULT_WORKERS
    chunk_size: int = DEFAULT_CHUNK_SIZE
    admissibility_tol: float = ADMISSIBILITY_TOL


@dataclass
class OracleConfig:
    """Verification and study settings."""
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    quad_tolerance: float = QUAD_TOLERANCE
    fine_grid_factor: int = FINE_GRID_FACTOR
    value_rtol: float = ORACLE_RELATIVE_TOL


@dataclass
class MonitoringConfig:
    """Logging configuration."""
    log_level: str = LOG_LEVEL
    log_format: str = "json"
    log_file: Optional[str] = None


@dataclass
class OutputConfig:
    """Report output configuration."""
    out_dir: str = str(DEFAULT_OUT_DIR)
    float_format: str = CSV_FLOAT_FORMAT


class Settings:
    """
    Centralized configuration management.

    Loads configuration from a JSON file, then environment variables,
    and validates the result.
    """

    def __init__(self, config_file: Optional[str] = None):
        """Initialize settings."""
        self.environment = Environment(os.getenv("VDP_ENV", "development"))

        self._load_from_file(config_file)
        self._load_from_env()

        try:
            self.solver = SolverConfig(**self._get_section("solver"))
            self.oracle = OracleConfig(**self._get_section("oracle"))
            self.monitoring = MonitoringConfig(**self._get_section("monitoring"))
            self.output = OutputConfig(**self._get_section("output"))
        except TypeError as e:
            raise RejectedInputError(f"unknown settings key: {e}", module="config") from e

        self._validate()

    def _load_from_file(self, config_file: Optional[str] = None) -> None:
        """Load configuration from file."""
        self._config_data: Dict[str, Any] = {}

        if config_file:
            path = Path(config_file)
            if not path.exists():
                raise RejectedInputError(
                    f"settings file not found: {config_file}", module="config"
                )
            self._config_data = self._read_json(path)
            return

        default_paths = [
            "vdp.json",
            "config/vdp.json",
            f"config/vdp.{self.environment.value}.json",
        ]
        for candidate in default_paths:
            if Path(candidate).exists():
                self._config_data = self._read_json(Path(candidate))
                logger.debug(f"Loaded settings from {candidate}")
                break

    @staticmethod
    def _read_json(path: Path) -> Dict[str, Any]:
        try:
            with open(path, "r") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise RejectedInputError(f"settings file {path} is not valid JSON: {e}", module="config")
        if not isinstance(data, dict):
            raise RejectedInputError(f"settings file {path} must hold a JSON object", module="config")
        return data

    def _load_from_env(self) -> None:
        """Load configuration from environment variables."""
        env_mappings = {
            "VDP_MEMORY_BUDGET": ["solver", "memory_budget"],
            "VDP_WORKERS": ["solver", "workers"],
            "VDP_CHUNK_SIZE": ["solver", "chunk_size"],
            "VDP_ENUMERATION_CAP": ["oracle", "enumeration_cap"],
            "VDP_LOG_LEVEL": ["monitoring", "log_level"],
            "VDP_LOG_FORMAT": ["monitoring", "log_format"],
            "VDP_LOG_FILE": ["monitoring", "log_file"],
            "VDP_OUT_DIR": ["output", "out_dir"],
        }
        integer_vars = {"VDP_MEMORY_BUDGET", "VDP_WORKERS", "VDP_CHUNK_SIZE", "VDP_ENUMERATION_CAP"}

        for env_var, path in env_mappings.items():
            value = os.getenv(env_var)
            if value is None:
                continue
            if env_var in integer_vars:
                try:
                    value = int(value)
                except ValueError:
                    raise RejectedInputError(
                        f"{env_var} must be an integer, got {value!r}", module="config"
                    )
            self._set_nested_value(path, value)

    def _get_section(self, section: str) -> Dict[str, Any]:
        """Get configuration section."""
        data = self._config_data.get(section, {})
        if not isinstance(data, dict):
            raise RejectedInputError(f"settings section '{section}' must be an object", module="config")
        return data

    def _set_nested_value(self, path: List[str], value: Any) -> None:
        """Set nested configuration value."""
        current = self._config_data
        for key in path[:-1]:
            if key not in current:
                current[key] = {}
            current = current[key]
        current[path[-1]] = value

    def _validate(self) -> None:
        """Validate configuration."""
        errors = []

        if self.solver.memory_budget < 1:
            errors.append("memory_budget must be at least 1 entry")
        if self.solver.workers < 1:
            errors.append("workers must be at least 1")
        if self.solver.chunk_size < 1:
            errors.append("chunk_size must be at least 1")
        if self.solver.admissibility_tol < 0:
            errors.append("admissibility_tol must be non-negative")

        if self.oracle.enumeration_cap < 1:
            errors.append("enumeration_cap must be at least 1")
        if self.oracle.quad_tolerance <= 0:
            errors.append("quad_tolerance must be positive")
        if self.oracle.fine_grid_factor < 1:
            errors.append("fine_grid_factor must be at least 1")

        if self.monitoring.log_level.upper() not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            errors.append(f"unknown log level {self.monitoring.log_level!r}")
        if self.monitoring.log_format not in {"json", "text"}:
            errors.append("log_format must be 'json' or 'text'")

        if errors:
            error_msg = "Configuration validation failed:\n" + "\n".join(f"  - {error}" for error in errors)
            raise RejectedInputError(error_msg, module="config")

    def to_dict(self) -> Dict[str, Any]:
        """Convert settings to dictionary."""
        return {
            "environment": self.environment.value,
            "solver": asdict(self.solver),
            "oracle": asdict(self.oracle),
            "monitoring": asdict(self.monitoring),
            "output": asdict(self.output),
        }


# Global settings instance
_settings: Optional[Settings] = None


def get_settings(config_file: Optional[str] = None) -> Settings:
    """Get or create the global settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings(config_file)
    return _settings


def reload_settings(config_file: Optional[str] = None) -> Settings:
    """Reload settings from configuration."""
    global _settings
    _settings = Settings(config_file)
    return _settings


__all__ = [
    "Settings",
    "Environment",
    "SolverConfig",
    "OracleConfig",
    "MonitoringConfig",
    "OutputConfig",
    "get_settings",
    "reload_settings",
]
