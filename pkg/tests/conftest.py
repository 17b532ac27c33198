import random

import pytest

from paratwist.forms import gritsenko_lift_phi10
from paratwist.twist import TwistEngine


@pytest.fixture(scope="session")
def lift():
    return gritsenko_lift_phi10()


@pytest.fixture(scope="session")
def engine3():
    return TwistEngine(3)


@pytest.fixture()
def rng():
    return random.Random(20260808)
