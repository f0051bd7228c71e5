import numpy as np
import pytest
from hypothesis import settings

from utils.config import load_grid_preset

settings.register_profile("srdist", deadline=None, max_examples=200)
settings.load_profile("srdist")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def quick_grid():
    return load_grid_preset('quick')


@pytest.fixture(scope="session")
def default_grid():
    return load_grid_preset('default')
