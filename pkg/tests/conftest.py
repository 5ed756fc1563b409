from importlib.resources import files

import numpy as np
import pytest
from hypothesis import strategies as st

import gcl
from gcl.context import FormalContext

# Sample context written out by hand, independent of the parser.
SAMPLE = {
    "1": {"a", "c", "d", "e"},
    "2": {"a", "c"},
    "3": {"b", "e"},
    "4": {"b", "e"},
    "5": {"a"},
    "6": {"a", "b", "e"},
}
SAMPLE_ATTRS = ("a", "b", "c", "d", "e")
SAMPLE_PATH = files("gcl") / "data" / "sample.cxt"


@pytest.fixture(scope="session")
def ctx():
    return gcl.read_context(SAMPLE_PATH)


@pytest.fixture(scope="session")
def lat(ctx):
    return gcl.build(ctx)


@pytest.fixture(scope="session")
def ab(lat):
    return lat.alphabet


@pytest.fixture(scope="session")
def ce_lat(ctx):
    return gcl.build(gcl.restrict(ctx, ["c", "e"]))


@st.composite
def small_contexts(draw, max_attrs=3, max_objects=6):
    m = draw(st.integers(1, max_attrs))
    n = draw(st.integers(0, max_objects))
    rows = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=n, max_size=n))
    names = tuple("abcdefgh"[:m])
    return FormalContext(tuple(str(i + 1) for i in range(n)), names, tuple(rows))


def random_contexts(count, n_attrs, n_objects, seed):
    rng = np.random.default_rng(seed)
    return [gcl.oracle.random_context(n_objects, n_attrs, rng) for _ in range(count)]
