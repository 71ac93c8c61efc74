import pytest

from tollshare import TollMatrix


@pytest.fixture
def example3() -> TollMatrix:
    """3 segments; one toll unit each on trips [1,2] and [1,3]."""
    return TollMatrix(3, {(1, 2): 1.0, (1, 3): 1.0})


@pytest.fixture
def example61() -> TollMatrix:
    """5-segment problem whose proportional allocation is unstable."""
    entries = {
        (1, 1): 1.0, (1, 2): 5.0, (1, 3): 0.01, (1, 4): 0.01, (1, 5): 1.0,
        (2, 2): 1.5, (2, 3): 0.01, (2, 4): 0.01, (2, 5): 0.02,
        (3, 3): 0.01, (3, 4): 0.01, (3, 5): 0.01,
        (4, 4): 2.0, (4, 5): 0.01,
        (5, 5): 0.01,
    }
    return TollMatrix(5, entries)
