import json
import pathlib

import pytest
from hypothesis import HealthCheck, settings

from bernblend import Weight, make_grid

settings.register_profile(
    "deterministic",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")

_GOLDEN_PATH = pathlib.Path(__file__).parent / "golden.json"


@pytest.fixture(scope="session")
def golden() -> dict:
    return json.loads(_GOLDEN_PATH.read_text())


@pytest.fixture(scope="session")
def weight513() -> Weight:
    """Default experiment weight: center 0.513, exponent 1."""
    return Weight(0.513, 1.0)


@pytest.fixture(scope="session")
def weight_center() -> Weight:
    """Centered weight used by the analytic oracles."""
    return Weight(0.5, 1.0)


@pytest.fixture(scope="session")
def grid513(weight513):
    return make_grid(weight513, 401)


@pytest.fixture(scope="session")
def grid_center(weight_center):
    return make_grid(weight_center, 401)


@pytest.fixture(scope="session")
def full_grid_center(weight_center):
    """Production-sized grid for values frozen in golden.json."""
    return make_grid(weight_center, 2001)
