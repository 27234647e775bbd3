# conftest.py
# Shared bases for the test suite

import pytest

from field_kernel import make_base
from integer_sets import enumerate_negbeta_integers
from log_config import configure_logging

TRIBONACCI = (1, -1, -1, -1)
CUBIC = (1, -2, -1, 1)
MINIMAL_PISOT = (1, 0, -1, -1)
GOLDEN = (1, -1, -1)
SILVER = (1, -2, -1)
# d_-beta(l) = (21)
GOLDEN_SQUARE = (1, -3, 1)
# d_-beta(l) = 2
ROOT_THREE = (1, -2, -2)
# d_-beta(l) = (3212)
EVEN_PERIOD = (1, -3, 0, -2)
BASE_TWO = (1, -2)
# d_-beta(l) = 3(112): odd period after a one digit preperiod
ODD_PERIOD = (1, -4, 2, -1, -1)


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    configure_logging("WARNING")


@pytest.fixture(scope="session")
def tribonacci():
    return make_base(TRIBONACCI)


@pytest.fixture(scope="session")
def cubic():
    return make_base(CUBIC)


@pytest.fixture(scope="session")
def minimal_pisot():
    return make_base(MINIMAL_PISOT)


@pytest.fixture(scope="session")
def golden():
    return make_base(GOLDEN)


@pytest.fixture(scope="session")
def silver():
    return make_base(SILVER)


@pytest.fixture(scope="session")
def base_two():
    return make_base(BASE_TWO)


@pytest.fixture(scope="session")
def odd_period():
    return make_base(ODD_PERIOD)


@pytest.fixture(scope="session")
def golden_square():
    return make_base(GOLDEN_SQUARE)


@pytest.fixture(scope="session")
def root_three():
    return make_base(ROOT_THREE)


@pytest.fixture(scope="session")
def even_period():
    return make_base(EVEN_PERIOD)


@pytest.fixture(scope="session")
def tribonacci_window(tribonacci):
    return enumerate_negbeta_integers(tribonacci, count=8)
