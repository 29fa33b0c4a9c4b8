import random

import pytest

from chainforge.algorithms.composed import ComposedPartitioner, PALETTE_SIZES, composed_partitioner_step
from chainforge.errors import WidthTooLarge
from chainforge.game import Arrive, RefereeOptions, referee_online, referee_upgrowing
from chainforge.generators import SequenceSource, random_upgrowing_interval, random_width_w
from chainforge.spoilers.ff import FFAdversary
from chainforge.spoilers.interval_lb import IntervalLBSpoiler
from oracles import BruteOrder, chain_classes, width_by_matching


def test_first_point():
    alg = ComposedPartitioner()
    s, c = composed_partitioner_step(alg, 0, ())
    assert s.w == 1 and c == 1
    assert len(s.bottoms) == len(s.tops) == 1 and all(b < 0 for b in s.bottoms + s.tops)


def test_palettes_are_disjoint():
    alg = ComposedPartitioner()
    for i in range(3):
        alg.assign(i, ())
    used = [set().union(*alg.s.chi[v].values()) for v in range(3)]
    assert [len(u) for u in used] == [PALETTE_SIZES[v] for v in (1, 2, 3)]
    assert not (used[0] & used[1]) and not (used[1] & used[2]) and not (used[0] & used[2])


def test_width_four_is_refused():
    alg = ComposedPartitioner()
    for i in range(3):
        alg.assign(i, ())
    with pytest.raises(WidthTooLarge):
        alg.assign(3, ())


def _run(ev, audit=False):
    alg = ComposedPartitioner(check=True)
    opts = RefereeOptions(on_step=(lambda v: alg.full_check()) if audit else None)
    return referee_online(alg, SequenceSource(ev), opts)


@pytest.mark.parametrize("w,bound", [(1, 1), (2, 5), (3, 16)])
def test_small_runs_with_full_audit(w, bound):
    rng = random.Random(w)
    for _ in range(5):
        ev = random_width_w(60, w, rng)
        t = _run(ev, audit=True)
        b = BruteOrder.from_arrivals(ev)
        assert width_by_matching(b) <= w
        assert chain_classes(b, t.assignments()) == t.num_chains() <= bound


def test_non_maximal_arrivals():
    # a point that slides between two existing ones
    ev = [Arrive(0, ()), Arrive(1, (0,)), Arrive(2, (0,), (1,)), Arrive(3, ())]
    t = _run(ev, audit=True)
    assert t.num_chains() <= 5


def test_against_adversaries():
    t = referee_online(ComposedPartitioner(), FFAdversary(8))
    assert t.num_chains() <= 5
    for w in (2, 3):
        t = referee_upgrowing(ComposedPartitioner(), IntervalLBSpoiler(w))
        assert t.num_chains() <= {2: 5, 3: 16}[w]
    ev, _ = random_upgrowing_interval(200, 3, random.Random(0))
    assert _run(ev).num_chains() <= 16
