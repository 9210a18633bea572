import pytest

from parrypascal.kernels import available_backends
from parrypascal.numeration import NumerationSystem

SPECS = {
    "phi": "1,1",
    "phi2": "2;1",
    "beta1": "2,1,0,1",
    "b1001": "1,0,0,1",
    "base2": "1;1",
    "base3": "2;2",
}


@pytest.fixture(scope="session")
def systems():
    return {name: NumerationSystem.from_string(text) for name, text in SPECS.items()}


@pytest.fixture(scope="session")
def phi(systems):
    return systems["phi"]


@pytest.fixture(scope="session")
def beta1(systems):
    return systems["beta1"]


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param
