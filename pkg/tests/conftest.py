import numpy as np
import pytest

from polypol.region import (centered_square, rectangle, sector_from_tau,
                            standard_triangle, unit_disk, upper_half_disk)


@pytest.fixture(scope="session")
def triangle():
    return standard_triangle()


@pytest.fixture(scope="session")
def square():
    return centered_square()


@pytest.fixture(scope="session")
def disk():
    return unit_disk()


@pytest.fixture(scope="session")
def half_disk():
    return upper_half_disk()


@pytest.fixture(scope="session")
def quarter_sector():
    return sector_from_tau(0, 1)


@pytest.fixture(scope="session")
def builder_domains(triangle, square, disk, half_disk, quarter_sector):
    return {
        "triangle": triangle,
        "square": square,
        "disk": disk,
        "half_disk": half_disk,
        "sector": quarter_sector,
        "rectangle": rectangle(1, 2),
    }


@pytest.fixture()
def rng():
    return np.random.default_rng(20260809)
