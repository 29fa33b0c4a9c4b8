import random

import pytest

from chainforge.algorithms.first_fit import FirstFit
from chainforge.algorithms.local import LocalCoreDisjoint, local_first_round
from chainforge.algorithms.upgrowing import UpGrowingInterval
from chainforge.errors import EdgeHasPrivateColor, IllegalColoring
from chainforge.game import LocalBoard, referee_local, referee_online
from chainforge.poset import width
from chainforge.spoilers.ff import FFAdversary, ff_adversary_events
from chainforge.spoilers.interval_lb import interval_lb_run
from chainforge.spoilers.local import (
    MutantColorer, _Fresh, edges_without_private, lcp3_lowerbound_scripts, local_private_spoiler_move,
    mutant_search,
)
from oracles import BruteOrder, chain_classes, width_by_matching


def test_ff_adversary_shape():
    ev = ff_adversary_events(6)
    assert len(ev) == 21 and width_by_matching(BruteOrder.from_arrivals(ev)) == 2
    t = referee_online(FirstFit(), FFAdversary(6))
    assert t.num_chains() == 6 and width(t.poset) == 2
    assert chain_classes(BruteOrder.from_arrivals(t.arrivals()), t.assignments()) == 6


@pytest.mark.parametrize("w", [2, 3, 4])
@pytest.mark.parametrize("make", [UpGrowingInterval, FirstFit], ids=["upgrowing", "first-fit"])
def test_interval_lb_is_exact(w, make):
    t, k, sp = interval_lb_run(w, make())
    assert k >= 2 * w - 1
    if make is UpGrowingInterval:
        assert k == 2 * w - 1
    rep = sp.s.rep
    b = BruteOrder.from_arrivals(t.arrivals())
    assert b.lt == {(x, y) for x in rep for y in rep if rep.less(x, y)}
    assert width(t.poset) == w
    assert b.has_2p2() is None
    # up-growing: each arrival is maximal when it appears
    seen = set()
    for a in t.arrivals():
        assert not any(b.less(a.id, y) for y in seen)
        seen.add(a.id)


class _Sabotaged:
    """Opens like the width-2 colorer but drops color 1 from t1."""

    def __init__(self, inner):
        self.inner = inner

    def first_round(self, L, T):
        chi = dict(local_first_round(2, L, T)[1])
        chi[T[0]] = chi[T[0]] - {1}
        return chi

    def respond(self, board, move):
        return self.inner(board, move)


class _OneShot:
    def __init__(self):
        self.fresh = _Fresh()

    def first(self, w):
        return self.fresh.take(w), self.fresh.take(w)

    def move(self, board):
        bad = edges_without_private(board)
        return local_private_spoiler_move(board, bad[0], self.fresh.take(board.w))

    def choose(self, board, move, col):
        return "upper"


def _lazy(board, move):
    return {m: frozenset([c]) for m, c in zip(move.middle, sorted(set().union(*board.chi.values())))}


@pytest.mark.parametrize("answer", [
    LocalCoreDisjoint().respond,
    lambda b, m: mutant_search(b, m),
    _lazy,
], ids=["core-disjoint", "search", "lazy"])
def test_private_spoiler_leaves_no_answer(answer):
    with pytest.raises(IllegalColoring):
        referee_local(_Sabotaged(answer), _OneShot(), 2, 1)


def test_healthy_board_is_refused():
    for w in (1, 2, 3):
        L, T = tuple(range(w)), tuple(range(w, 2 * w))
        _, chi = local_first_round(w, L, T)
        board = LocalBoard(L, T, frozenset((l, t) for l in L for t in T), chi)
        assert edges_without_private(board) == []
        with pytest.raises(EdgeHasPrivateColor):
            local_private_spoiler_move(board, (L[0], T[0]), range(100, 100 + w))


def test_script_verdicts():
    assert lcp3_lowerbound_scripts(MutantColorer(9)).verdict == "defeated"
    for e in [(i, j) for i in range(3) for j in range(3)]:
        assert lcp3_lowerbound_scripts(MutantColorer(10, e)).verdict == "defeated", e
    assert lcp3_lowerbound_scripts(LocalCoreDisjoint()).verdict == "survived"


def test_random_local_spoiler_is_reproducible():
    from chainforge.spoilers.local import RandomLocalSpoiler
    runs = [referee_local(LocalCoreDisjoint(), RandomLocalSpoiler(random.Random(7), dense_bias=4), 3, 15)
            for _ in range(2)]
    assert [b.edges for b in runs[0].boards] == [b.edges for b in runs[1].boards]
