import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from chainforge.errors import NotIntervalOrder, OrderChanged
from chainforge.interval import (
    IntervalRep, TwoPlusTwoWitness, find_2p2_bruteforce, is_interval_order, max_overlap,
    realize, rearrange_right_endpoints,
)
from chainforge.generators import random_upgrowing_interval
from chainforge.poset import Poset, width
from conftest import both, pred_lists

Q_COVERS = {"k": "", "l": "", "m": "", "n": "k", "o": "kl", "p": "klm", "q": "op"}


def build(covers, drop=()):
    p = Poset()
    for x, preds in covers.items():
        p.add_point(x, [c for c in preds if (c, x) not in drop])
    return p


def same_order(p, rep):
    return all(p.less(a, b) == rep.less(a, b) for a in p.points for b in p.points if a != b)


def test_antichain_and_q():
    anti = Poset()
    for i in range(4):
        anti.add_point(i)
    assert is_interval_order(anti) is True
    q = build(Q_COVERS)
    assert is_interval_order(q) is True
    rep = realize(q)
    assert same_order(q, rep)
    # the drawn representation of Q
    drawn = IntervalRep({"k": (60, 68), "l": (56, 76), "m": (64, 84), "n": (72, 104),
                         "o": (80, 96), "p": (88, 92), "q": (100, 116)})
    assert same_order(q, drawn)
    assert width(q) == max_overlap(drawn)


def test_r_has_witness():
    r = build(Q_COVERS, drop={("k", "p")})
    wit = is_interval_order(r)
    assert isinstance(wit, TwoPlusTwoWitness)
    a, b, c, d = wit.a, wit.b, wit.c, wit.d
    assert r.less(a, b) and r.less(c, d) and not r.comparable(a, d) and not r.comparable(c, b)
    assert r.less("k", "n") and r.less("m", "p")
    assert not r.comparable("k", "p") and not r.comparable("m", "n")
    with pytest.raises(NotIntervalOrder):
        realize(r)


def test_chain_of_three():
    p = Poset()
    for i in range(3):
        p.add_point(i, [i - 1] if i else [])
    rep = realize(p)
    assert rep[0][1] < rep[1][0] and rep[1][1] < rep[2][0]


@settings(max_examples=200, deadline=None)
@given(pred_lists())
def test_recognition_matches_brute_force(items):
    p, b = both(items)
    res = is_interval_order(p)
    assert (res is True) == (b.has_2p2() is None)
    assert (find_2p2_bruteforce(p) is None) == (res is True)
    if res is True:
        assert same_order(p, realize(p))


def test_realize_round_trip_on_generated_orders():
    rng = random.Random(8)
    for _ in range(50):
        ev, rep = random_upgrowing_interval(rng.randint(0, 50), rng.randint(1, 5), rng)
        p = Poset()
        for e in ev:
            p.add_point(e.id, e.preds)
        assert same_order(p, rep)
        assert same_order(p, realize(p))


def test_rearrange():
    rep = IntervalRep({0: (Fraction(0), Fraction(1)), 1: (Fraction(0), Fraction(2)), 2: (Fraction(3), Fraction(4))})
    assert rearrange_right_endpoints(rep, {}) == rep
    eq = rearrange_right_endpoints(rep, {0: Fraction(2)})
    assert eq[0] == (0, 2)
    with pytest.raises(OrderChanged):
        rearrange_right_endpoints(rep, {0: Fraction(5)})
    top = IntervalRep({0: (Fraction(0), Fraction(1)), 1: (Fraction(2), Fraction(3))})
    with pytest.raises(OrderChanged):
        rearrange_right_endpoints(top, {0: Fraction(-1)})


def test_text_round_trip():
    rep = IntervalRep({1: (Fraction(1, 3), Fraction(5, 2)), 2: (Fraction(0), Fraction(7))})
    again = IntervalRep.from_text(rep.to_text())
    assert again == rep and again.to_text() == rep.to_text()
