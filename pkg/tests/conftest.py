import math

import pytest

H_VALUES = (0.1, -0.1, 0.5, -0.5, 1.0, -1.0)


def close(actual, expected, tol):
    """Relative error when |expected| > 1, absolute otherwise."""
    return abs(actual - expected) <= tol * max(1.0, abs(expected))


@pytest.fixture
def h_values():
    return H_VALUES
