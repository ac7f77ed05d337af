import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from symdom import TripleSpace

settings.register_profile(
    "symdom",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("symdom")

DISC = TripleSpace.of((1, 1))
BIDISC = TripleSpace.of((1, 1), (1, 1))
M22 = TripleSpace.of((2, 2))
M23 = TripleSpace.of((2, 3))
SPACES = [DISC, BIDISC, M22, M23, TripleSpace.of((3, 4)), TripleSpace.of((2, 2), (1, 3))]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=SPACES, ids=str)
def space(request):
    return request.param
