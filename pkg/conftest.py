import numpy as np
import pytest

from core.model import Grid1D, GridST, PhysicalConstants


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def natural():
    return PhysicalConstants.natural()


@pytest.fixture
def profile_grid():
    return Grid1D(-1.0, 1.0, 2001)


@pytest.fixture
def small_st_grid():
    # c * dt == dx in natural units
    return GridST(Grid1D(-2.0, 2.0, 81), 0.0, 2.0, 41)
