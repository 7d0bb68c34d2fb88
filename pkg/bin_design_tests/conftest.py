import numpy as np
import pytest

from bin_design.search import MarginalSet
from bin_design.utils import BoxDims, Bounds


@pytest.fixture
def toy_marginal_sets():
    """Two orders: a unit cube and a 2x2x2 cube."""
    return [MarginalSet('a', (BoxDims(1, 1, 1),)), MarginalSet('b', (BoxDims(2, 2, 2),))]


@pytest.fixture
def toy_bounds():
    return Bounds(3, 3, 3, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
