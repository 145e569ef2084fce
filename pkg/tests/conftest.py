import numpy as np
import pytest


@pytest.fixture
def golden_3x2():
    """The 3x2 matrix that admits two signals with the same unordered measurements."""
    return np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 2.0]])


@pytest.fixture
def golden_4x2(golden_3x2):
    """Appending the row (1, -1) restores unique recovery."""
    return np.vstack([golden_3x2, [1.0, -1.0]])


@pytest.fixture
def golden_pair():
    """The two signals that collide on the 3x2 matrix."""
    return np.array([1.0, -3.0]), np.array([-5.0, 1.0])
