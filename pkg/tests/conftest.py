import math

import numpy as np
import pytest

from diffrace.geometry import validate_config


@pytest.fixture
def two_solenoid():
    """Two unit-separated solenoids with half-integer fluxes."""
    return validate_config([(0.0, 0.0), (1.0, 0.0)], [0.5, 0.5])


@pytest.fixture
def triangle():
    """Counterclockwise equilateral triangle of side 1, all fluxes 1/2."""
    return validate_config(
        [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2.0)], [0.5, 0.5, 0.5]
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
