import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from phantoms import catalog

settings.register_profile("repo", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(scope="session")
def L22():
    return catalog.load("L22")


@pytest.fixture(scope="session")
def A3():
    return catalog.load("A3")


@pytest.fixture(scope="session")
def E():
    return catalog.load("E")


@pytest.fixture(scope="session")
def F():
    return catalog.load("F")


@pytest.fixture(scope="session")
def G():
    return catalog.load("G")


@pytest.fixture(scope="session")
def H():
    return catalog.load("H")


@pytest.fixture(scope="session")
def random_algebras():
    rng = np.random.default_rng(2024)
    return [catalog.random_string_algebra(rng, name=f"r{k}") for k in range(50)]
