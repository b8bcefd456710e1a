import numpy as np
import pytest

from beattylab.exact import BeattyParams, GOLDEN, SQRT2, surd


@pytest.fixture(scope="session")
def golden_params():
    return BeattyParams(GOLDEN)


@pytest.fixture(scope="session")
def sqrt2_params():
    return BeattyParams(SQRT2)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260808)


def random_surd(rng, lo=1.05, hi=40.0):
    """A quadratic surd alpha with lo < alpha < hi, small parameters."""
    while True:
        d = int(rng.choice([2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29]))
        p = int(rng.integers(-6, 30))
        q = int(rng.integers(1, 8))
        s = surd(p, d, q)
        if s.is_irrational() and lo < float(s) < hi:
            return s
