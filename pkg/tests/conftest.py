import numpy as np
import pytest

from kleinian.sampling import random_curve, random_divisor


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def make_curve(rng):
    def _make(n, s, scale=0.7):
        return random_curve(n, s, rng, scale)

    return _make


@pytest.fixture
def make_divisor(rng):
    def _make(curve, degree=None):
        return random_divisor(curve, degree if degree is not None else curve.genus, rng)

    return _make
