import numpy as np
import pytest

from boostlets.boostlet import default_mother
from boostlets.field import GridSpec
from boostlets.signals import random_band_limited, signal_suite
from boostlets.uncertainty import GroupQuadrature


@pytest.fixture(scope="session")
def grid128():
    return GridSpec.square(128, 8.0)


@pytest.fixture(scope="session")
def grid64():
    return GridSpec.square(64, 8.0)


@pytest.fixture(scope="session")
def mother(grid128):
    return default_mother(grid128)


@pytest.fixture(scope="session")
def mother64(grid64):
    return default_mother(grid64)


@pytest.fixture(scope="session")
def quad(mother):
    return GroupQuadrature.default(mother)


@pytest.fixture(scope="session")
def delta(quad, mother):
    return quad.admissibility(mother).delta


@pytest.fixture(scope="session")
def suite(grid128):
    return signal_suite(grid128, seed=0, n=20)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def band_limited64(grid64):
    return random_band_limited(grid64, np.random.default_rng(7))


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[_ACCEPTANCE]
