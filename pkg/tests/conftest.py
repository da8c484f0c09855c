import pytest

from donorpair import DEFAULT_GEOMETRY, compute_spectrum, effective_params


@pytest.fixture(scope="session")
def default_params():
    return effective_params(DEFAULT_GEOMETRY)


@pytest.fixture(scope="session")
def default_spectrum():
    return compute_spectrum(DEFAULT_GEOMETRY)
