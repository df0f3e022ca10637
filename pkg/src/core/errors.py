"""
Error Hierarchy
Module ID: VDP-CORE-ERR-001
Version: 0.1.0

Every failure the solver reports carries the module and, where one exists,
the stage it happened at. The CLI maps each class to a distinct exit code.
"""

from typing import Optional

from src.core.constants import EXIT_CODES


class VolterraDPError(Exception):
    """Base class for all solver errors."""

    exit_code: int = EXIT_CODES["unexpected"]

    def __init__(
        self,
        message: str,
        *,
        module: Optional[str] = None,
        stage: Optional[int] = None,
    ):
        super().__init__(message)
        self.message = message
        self.module = module
        self.stage = stage

    def diagnostic(self) -> str:
        """One-line diagnostic naming module and stage."""
        where = self.module or "vdp"
        if self.stage is not None:
            where = f"{where} stage {self.stage}"
        return f"[{where}] {type(self).__name__}: {self.message}"


class RejectedInputError(VolterraDPError, ValueError):
    """Input violates a documented precondition."""

    exit_code = EXIT_CODES["input_error"]


class CapacityError(VolterraDPError):
    """A run would exceed a configured size guard."""

    exit_code = EXIT_CODES["capacity_error"]

    def __init__(
        self,
        message: str,
        *,
        required: int,
        available: int,
        module: Optional[str] = None,
        stage: Optional[int] = None,
    ):
        super().__init__(
            f"{message} (required {required}, available {available})",
            module=module,
            stage=stage,
        )
        self.required = required
        self.available = available


class NumericalFailure(VolterraDPError):
    """A state or cost became non-finite."""

    exit_code = EXIT_CODES["numerical_failure"]


class OracleMismatch(VolterraDPError):
    """An independent check disagreed with the solver."""

    exit_code = EXIT_CODES["oracle_mismatch"]


class InvariantViolation(VolterraDPError):
    """Internal consistency check failed."""

    exit_code = EXIT_CODES["invariant_violation"]


__all__ = [
    "VolterraDPError",
    "RejectedInputError",
    "CapacityError",
    "NumericalFailure",
    "OracleMismatch",
    "InvariantViolation",
]
