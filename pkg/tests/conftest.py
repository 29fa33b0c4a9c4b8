import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from chainforge.poset import Poset  # noqa: E402
from oracles import BruteOrder  # noqa: E402

# points of the eight-element example order, listed with all strict predecessors
P0_LESS = {
    "a": "cdefgh", "b": "efgh", "c": "fgh", "d": "fh", "e": "gh", "f": "h", "g": "h",
}
P0_COVERS = [("a", ""), ("b", ""), ("c", "a"), ("d", "a"), ("e", "ab"), ("f", "bcd"), ("g", "ce"), ("h", "fg")]
NAMES = "abcdefgh"


def build_p0():
    p = Poset()
    for x, preds in P0_COVERS:
        p.add_point(NAMES.index(x), [NAMES.index(q) for q in preds])
    return p


@pytest.fixture
def p0():
    return build_p0()


@st.composite
def pred_lists(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    return [(i, sorted(draw(st.sets(st.integers(0, i - 1), max_size=i)) if i else [])) for i in range(n)]


def poset_from(items):
    p = Poset()
    for x, preds in items:
        p.add_point(x, preds)
    return p


def random_items(rng, n, density):
    return [(i, [j for j in range(i) if rng.random() < density]) for i in range(n)]


def both(items):
    return poset_from(items), BruteOrder.from_preds(items)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
