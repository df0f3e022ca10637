"""
Pytest Configuration and Fixtures
Module ID: VDP-TEST-001
Version: 0.1.0

Shared fixtures: built-in problems, discretizations, output directories
and a settings reset around every test.
"""

import logging

import numpy as np
import pytest

from src.config import settings as settings_module
from src.discretize import discretize
from src.dp import quantize
from src.problem import builtin_problem

# Disable logging during tests
logging.getLogger().setLevel(logging.CRITICAL)


@pytest.fixture(autouse=True)
def reset_settings(monkeypatch):
    """Fresh settings per test, without VDP_* overrides from the shell."""
    import os
    for var in list(os.environ):
        if var.startswith("VDP_"):
            monkeypatch.delenv(var, raising=False)
    settings_module._settings = None
    yield
    settings_module._settings = None


@pytest.fixture
def temp_dir(tmp_path):
    """Provide temporary directory."""
    return tmp_path


@pytest.fixture
def out_dir(tmp_path):
    """Output directory for CLI runs."""
    path = tmp_path / "out"
    path.mkdir()
    return path


@pytest.fixture
def zero_problem():
    return builtin_problem("zero")


@pytest.fixture
def lq_problem():
    return builtin_problem("lq")


@pytest.fixture
def linear_growth_problem():
    return builtin_problem("linear_growth")


@pytest.fixture
def memory_decay_problem():
    return builtin_problem("memory_decay")


@pytest.fixture
def logistic_problem():
    return builtin_problem("logistic_memory")


@pytest.fixture(params=["zero", "lq", "linear_growth", "memory_decay", "logistic_memory"])
def any_builtin(request):
    """Every built-in problem in turn."""
    return builtin_problem(request.param)


@pytest.fixture
def lq_n2(lq_problem):
    """LQ problem on two steps with three control levels."""
    dp = discretize(lq_problem, 2)
    return dp, quantize(lq_problem.control_box, 3)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def lq_problem_config() -> dict:
    """Configuration mapping of the LQ problem, for file-based tests."""
    from src.problem import builtin_config
    return builtin_config("lq")


# Test markers
pytest_plugins = []


def pytest_configure(config):
    """Configure pytest markers."""
    config.addinivalue_line(
        "markers", "unit: marks tests as unit tests"
    )
    config.addinivalue_line(
        "markers", "integration: marks tests as integration tests"
    )
    config.addinivalue_line(
        "markers", "slow: marks tests as slow running"
    )
