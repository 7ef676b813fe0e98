from pathlib import Path

import pytest

import lindelof2.holo


@pytest.fixture(autouse=True)
def strict_function_bounds():
    # Test builds enforce |f| <= sup_norm on every evaluation.
    old = lindelof2.holo.STRICT_BOUNDS
    lindelof2.holo.STRICT_BOUNDS = True
    yield
    lindelof2.holo.STRICT_BOUNDS = old


SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def scenario_dir():
    return SCENARIO_DIR


@pytest.fixture
def golden_dir():
    return GOLDEN_DIR
