import numpy as np
import pytest

from src.algebra.scalars import make_domain


@pytest.fixture(scope="session")
def symbolic():
    return make_domain("symbolic")


@pytest.fixture(scope="session")
def index2():
    """λ = √2, the A_3 root of unity."""
    return make_domain("index=2")


@pytest.fixture(scope="session")
def index4():
    return make_domain("index=4")


@pytest.fixture(scope="session")
def golden():
    """λ = 2cos(π/5), the golden ratio."""
    return make_domain("index=4cos2(pi/5)")


@pytest.fixture(scope="session")
def floating():
    return make_domain("float:index=2.5,eps=1e-10")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
