import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=150,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def F4():
    from drinfeld_local import GF
    return GF(2, 2)


@pytest.fixture
def K2():
    from drinfeld_local import GF, LocalField
    return LocalField(GF(2))
