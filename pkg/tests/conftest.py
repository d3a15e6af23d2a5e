import numpy as np
import pytest

from varlat import make_pcf


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)


def random_pcf(rng, max_cells=8, lo=-2.0, hi=2.0, min_gap=1e-6):
    """Random step function with well-separated breakpoints."""
    n = int(rng.integers(1, max_cells + 1))
    while True:
        bps = np.sort(rng.uniform(lo, hi, n + 1))
        if np.all(np.diff(bps) >= min_gap):
            break
    return make_pcf(bps, rng.uniform(-2.0, 2.0, n))


@pytest.fixture
def make_random_pcf(rng):
    def factory(**kwargs):
        return random_pcf(rng, **kwargs)

    return factory
