"""
Unit Tests for Settings and Errors
Module ID: VDP-TEST-CONFIG-001
Version: 0.1.0
"""

import json

import pytest

from src.config.settings import Settings, get_settings, reload_settings
from src.core.constants import DEFAULT_CHUNK_SIZE, DEFAULT_ENUMERATION_CAP, EXIT_CODES
from src.core.errors import (
    CapacityError,
    InvariantViolation,
    NumericalFailure,
    OracleMismatch,
    RejectedInputError,
)


@pytest.mark.unit
class TestSettings:

    def test_defaults(self):
        settings = get_settings()
        assert settings.solver.workers == 1
        assert settings.solver.chunk_size == DEFAULT_CHUNK_SIZE
        assert settings.oracle.enumeration_cap == DEFAULT_ENUMERATION_CAP
        assert settings.output.float_format == "%.17g"

    def test_singleton(self):
        assert get_settings() is get_settings()

    def test_file_overrides(self, temp_dir):
        path = temp_dir / "vdp.json"
        path.write_text(json.dumps({"solver": {"workers": 3}, "oracle": {"fine_grid_factor": 128}}))
        settings = reload_settings(str(path))
        assert settings.solver.workers == 3
        assert settings.oracle.fine_grid_factor == 128
        assert get_settings() is settings

    def test_environment_beats_file(self, temp_dir, monkeypatch):
        path = temp_dir / "vdp.json"
        path.write_text(json.dumps({"solver": {"workers": 3}}))
        monkeypatch.setenv("VDP_WORKERS", "5")
        assert Settings(str(path)).solver.workers == 5

    def test_non_integer_environment(self, monkeypatch):
        monkeypatch.setenv("VDP_CHUNK_SIZE", "lots")
        with pytest.raises(RejectedInputError, match="VDP_CHUNK_SIZE"):
            Settings()

    def test_missing_file(self, temp_dir):
        with pytest.raises(RejectedInputError, match="not found"):
            Settings(str(temp_dir / "absent.json"))

    def test_unknown_key_rejected(self, temp_dir):
        path = temp_dir / "vdp.json"
        path.write_text(json.dumps({"solver": {"threads": 3}}))
        with pytest.raises(RejectedInputError, match="unknown settings key"):
            Settings(str(path))

    @pytest.mark.parametrize(
        "section,values,message",
        [
            ("solver", {"workers": 0}, "workers"),
            ("solver", {"memory_budget": 0}, "memory_budget"),
            ("oracle", {"quad_tolerance": 0.0}, "quad_tolerance"),
            ("monitoring", {"log_level": "LOUD"}, "log level"),
            ("monitoring", {"log_format": "xml"}, "log_format"),
        ],
    )
    def test_validation(self, temp_dir, section, values, message):
        path = temp_dir / "vdp.json"
        path.write_text(json.dumps({section: values}))
        with pytest.raises(RejectedInputError, match=message):
            Settings(str(path))

    def test_to_dict(self):
        data = get_settings().to_dict()
        assert set(data) == {"environment", "solver", "oracle", "monitoring", "output"}


@pytest.mark.unit
class TestErrors:

    @pytest.mark.parametrize(
        "error,code",
        [
            (RejectedInputError("x"), EXIT_CODES["input_error"]),
            (CapacityError("x", required=2, available=1), EXIT_CODES["capacity_error"]),
            (NumericalFailure("x"), EXIT_CODES["numerical_failure"]),
            (OracleMismatch("x"), EXIT_CODES["oracle_mismatch"]),
            (InvariantViolation("x"), EXIT_CODES["invariant_violation"]),
        ],
    )
    def test_exit_codes_are_distinct(self, error, code):
        assert error.exit_code == code

    def test_diagnostic_names_module_and_stage(self):
        err = NumericalFailure("state became non-finite", module="dp", stage=3)
        assert err.diagnostic() == "[dp stage 3] NumericalFailure: state became non-finite"

    def test_capacity_message(self):
        err = CapacityError("too big", required=10, available=5, module="dp")
        assert "required 10, available 5" in err.message
        assert err.required == 10
