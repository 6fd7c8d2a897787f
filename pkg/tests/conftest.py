import pytest

from darboux_eta.algebra import GF
from helpers import affine, form


@pytest.fixture
def cusp_form():
    return form("3*x*dy - 2*y*dx")


@pytest.fixture
def cusp_curve():
    return affine("x^2 - y^3")


@pytest.fixture
def f29():
    return GF(29)
