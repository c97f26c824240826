import pytest

from qosm import PowerLaw, Rational

S23 = 2.0 / 3.0

# reference configurations used across the suite
BDC = (PowerLaw(-2.5), Rational(beta=6.0, a=0.7), S23)
UDC = (PowerLaw(-2.5), Rational(beta=2.0, a=1.0), S23)
PARIS = (PowerLaw(-2.0), Rational(beta=6.0, a=1.0), 0.5)


@pytest.fixture
def bdc():
    return BDC


@pytest.fixture
def udc():
    return UDC
