import numpy as np
import pytest


@pytest.fixture
def rng() -> np.random.Generator:
    # fixed seed: the suites are randomized but reproducible
    return np.random.default_rng(20260819)
