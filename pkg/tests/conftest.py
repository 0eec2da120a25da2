"""Shared fixtures; heavy scenario runs execute once per session."""

import sys
from pathlib import Path

import pytest

SRC = Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from fracepi.scenarios import (  # noqa: E402
    run_baseline,
    run_contour,
    run_reinfection_sweep,
    run_sigma_sweep,
)


@pytest.fixture(scope="session")
def baseline_runs():
    return run_baseline()


@pytest.fixture(scope="session")
def sigma_runs():
    return run_sigma_sweep()


@pytest.fixture(scope="session")
def reinfection_runs():
    return run_reinfection_sweep()


@pytest.fixture(scope="session")
def contour_grid():
    # full default grid, 1000-day cells; the slowest fixture (~2-3 min)
    return run_contour()
