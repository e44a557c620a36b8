import numpy as np
import pytest

from gacalc.fixtures import (
    polar_fixture,
    polar_map,
    sphere_fixture,
    torsionful_fixture,
    zero_fixture,
)


@pytest.fixture(scope="session")
def zero3():
    return zero_fixture()


@pytest.fixture(scope="session")
def zero2():
    return zero_fixture(2)


@pytest.fixture(scope="session")
def polar():
    return polar_fixture()


@pytest.fixture(scope="session")
def sphere():
    return sphere_fixture()


@pytest.fixture(scope="session")
def torsionful():
    return torsionful_fixture()


@pytest.fixture(scope="session")
def pmap():
    return polar_map()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
