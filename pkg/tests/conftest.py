import numpy as np
import pytest

from salemlab.schemas.measure_schemas import AtomMeasure
from salemlab.services.cantor_construct import build_params, construct, deterministic_cantor
from salemlab.services.fourier_lab import step_factor


@pytest.fixture(scope="session")
def small_measure():
    """alpha = 1/2 construction with n_j = 4, t_j = 2 and seven levels."""
    return construct(build_params(0.5, 4, 7, seed=7, k_max=4096))


@pytest.fixture(scope="session")
def tiny_measure():
    return construct(build_params(0.5, 4, 3, seed=3))


@pytest.fixture(scope="session")
def middle_thirds():
    return deterministic_cantor(3, [0, 2], 8)


@pytest.fixture
def uniform_hat():
    """Transform of Lebesgue measure on [0, 1]."""

    def transform(xi):
        return step_factor(np.asarray(xi, dtype=float))

    return transform


@pytest.fixture
def unit_atom():
    return AtomMeasure.uniform([1.0])


@pytest.fixture(scope="session")
def half_depth9():
    """alpha = 1/2 construction with nine levels; only the slow tests build it."""
    return construct(build_params(0.5, 4, 9, seed=42, k_max=4096))
