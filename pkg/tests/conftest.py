import pytest

from airylab import PhysParams, make_grid


@pytest.fixture(scope="session")
def phys():
    return PhysParams()


@pytest.fixture(scope="session")
def grid64():
    """Workhorse lattice: 2048 points on [-64, 64], dx = 1/16."""
    return make_grid(2048, -64.0, 64.0)


@pytest.fixture(scope="session")
def grid128():
    return make_grid(4096, -128.0, 128.0)
