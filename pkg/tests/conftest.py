# tests/conftest.py
# Shared fixtures for the pidispatch test suite.

# Importing relevant libraries
import pytest

from pidispatch.client import Microgrid
from pidispatch.grid import GeneratorKind
from tests.helpers import quadratic_unit


@pytest.fixture
# Responsible only for returning a Microgrid on the built-in synthetic configuration.
def microgrid():
    return Microgrid()


@pytest.fixture
# Two quadratic units (beta 1 and 2, gamma 0.5) with bounds [0, 100] and no ramp limits.
def two_units():
    return (quadratic_unit('a', beta=1.0, gamma=0.5),
            quadratic_unit('b', beta=2.0, gamma=0.5, kind=GeneratorKind.NG))


@pytest.fixture(scope='session')
# A one-day, 15-minute dataset (96 samples) labelled with the default fleet.
def small_dataset():
    return Microgrid().data.generate(seed=3, days=1, resolution=15)
