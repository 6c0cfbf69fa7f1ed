import numpy as np
import pytest

from kaczmarz_rkhs.measures import Atomic, Mixture, cantor, delta


@pytest.fixture
def two_atom():
    return Atomic(((0.0, 0.5), (0.5, 0.5)))


@pytest.fixture
def mu3():
    return cantor(3)


@pytest.fixture
def mu4():
    return cantor(4)


@pytest.fixture
def test_measures(two_atom, mu3, mu4):
    """The five measures every cross-checking test runs over."""
    return {
        "delta0": delta(0.0),
        "two-atom": two_atom,
        "mu3": mu3,
        "mu4": mu4,
        "mixture": Mixture(((0.5, mu3), (0.5, delta(0.5)))),
    }


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
