import random

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from crystalaip.tensor_core import IntTensor

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@st.composite
def shapes(draw, min_modes=0, max_modes=4, max_size=4):
    q = draw(st.integers(min_modes, max_modes))
    return tuple(draw(st.integers(1, max_size)) for _ in range(q))


@st.composite
def tensors(draw, shape=None, low=-5, high=5, **kw):
    if shape is None:
        shape = draw(shapes(**kw))
    cells = int(np.prod(shape, dtype=np.int64)) if shape else 1
    entries = draw(st.lists(st.integers(low, high), min_size=cells, max_size=cells))
    return IntTensor(shape, entries)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def M():
    return IntTensor.from_nested([[0, 0, 1], [1, 0, -1], [0, 0, 0]])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number][2])
