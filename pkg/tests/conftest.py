import pytest
from hypothesis import HealthCheck, settings

from permbin.field import make_field, prime_power

settings.register_profile(
    "repro", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repro")

PRIME_POWERS_31 = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31]


def field(q):
    return make_field(*prime_power(q))


@pytest.fixture
def F7():
    return make_field(7)


@pytest.fixture
def F13():
    return make_field(13)
