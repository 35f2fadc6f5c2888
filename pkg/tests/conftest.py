import numpy as np
import pytest

from bregopt import kernel

# Sampling boxes keeping finite-difference checks well inside each domain.
INTERIOR_BOX = {
    "energy": (-10.0, 10.0),
    "boltzmann_shannon": (2e-3, 10.0),
    "fermi_dirac": (0.01, 0.99),
    "burg": (2e-3, 10.0),
    "hellinger": (-0.99, 0.99),
}

LOG_SAMPLED = {"boltzmann_shannon", "burg"}


def sample_interior(kind, rng, size):
    lo, hi = INTERIOR_BOX[kind]
    if kind in LOG_SAMPLED:
        return np.exp(rng.uniform(np.log(lo), np.log(hi), size))
    return rng.uniform(lo, hi, size)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture(params=list(INTERIOR_BOX))
def kernel_kind(request):
    return request.param


@pytest.fixture
def scalar_kernel(kernel_kind):
    return kernel(kernel_kind)
