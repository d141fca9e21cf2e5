import pytest

from twistlab.characters import enumerate_characters
from twistlab.series import delta_normalized, divisor_series, zeta_times_L

FIXTURE_N = 10_000


@pytest.fixture(scope="session")
def zeta2():
    return divisor_series(FIXTURE_N)


@pytest.fixture(scope="session")
def delta():
    return delta_normalized(FIXTURE_N)


@pytest.fixture(scope="session")
def zl_chi4():
    return zeta_times_L(enumerate_characters(4)[1], FIXTURE_N)


@pytest.fixture(scope="session")
def all_fixtures(zeta2, delta, zl_chi4):
    return [zeta2, delta, zl_chi4]
