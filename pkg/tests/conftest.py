import numpy as np
import pytest

from cyclic6j.context import make_context


@pytest.fixture(params=[3, 5, 7], ids=lambda n: f"N{n}")
def ctx(request):
    return make_context(request.param)


@pytest.fixture
def ctx3():
    return make_context(3)


@pytest.fixture
def ctx5():
    return make_context(5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
