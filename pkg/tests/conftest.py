import random

import pytest
from hypothesis import settings

from coeff_rings import RingDescriptor

settings.register_profile("algebra", deadline=None, max_examples=50, derandomize=True)
settings.load_profile("algebra")

Z = RingDescriptor.integers()
Q = RingDescriptor.rationals()
Z2 = RingDescriptor.zmod(2)
Z3 = RingDescriptor.zmod(3)
Z4 = RingDescriptor.zmod(4)
Z6 = RingDescriptor.zmod(6)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(17)


@pytest.fixture(params=[Z, Q, Z2, Z4, Z6], ids=str)
def any_ring(request) -> RingDescriptor:
    return request.param


@pytest.fixture(params=[Z2, Z3, Z4, Z6], ids=str)
def finite_ring(request) -> RingDescriptor:
    return request.param
