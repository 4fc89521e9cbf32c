import numpy as np
import pytest

from harris_mo import Exponential, Frechet, Pareto, Uniform, Weibull

FAMILIES = [
    Exponential(1.0),
    Exponential(2.5),
    Weibull(0.7, 2.0),
    Weibull(3.0, 1.0),
    Pareto(1.5, 2.0),
    Frechet(2.0, 0.5),
    Uniform(0.0, 1.0),
    Uniform(-3.0, 4.0),
]


@pytest.fixture(params=FAMILIES, ids=repr)
def family(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
