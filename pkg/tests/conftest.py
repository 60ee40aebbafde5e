"""Shared fixtures: deterministic RNG and one-time kernel warm-up."""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from cavityshare import _kernels

settings.register_profile(
    "cavityshare",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("cavityshare")


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    """Compile the jitted kernels once so timed tests measure steady state."""
    _kernels.warm_up()
    return _kernels.backend_name()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
