"""Seeded random inputs: arbitrary posets, bounded-width on-line posets, and
up-growing interval orders."""

from __future__ import annotations

import random
from bisect import bisect_left, insort
from dataclasses import dataclass
from fractions import Fraction

from .bits import iter_bits
from .game import Arrive
from .interval import IntervalRep
from .poset import Poset


def random_poset(n, density=0.35, rng=None):
    """Random order: each new point picks predecessors independently."""
    rng = rng or random.Random()
    p = Poset()
    for x in range(n):
        p.add_point(x, [y for y in range(x) if rng.random() < density])
    return p


def _minimal_gens(p, m):
    """Smallest list of ids whose closed down-set (or up-set) is the mask m."""
    return sorted(p._ids[i] for i in iter_bits(m) if not (p._up[i] & m))


def _minimal_up_gens(p, m):
    return sorted(p._ids[i] for i in iter_bits(m) if not (p._down[i] & m))


def random_width_w(n, w, rng=None, p_top=0.5, p_extend=0.5, upgrowing=False):
    """On-line poset of width at most w, returned as a list of Arrive events.

    Every point is inserted into one of w hidden chains between two
    consecutive members a < b; its down-set contains a's and its up-set b's.
    Down-sets (up-sets) are then widened by points lying below every
    successor (above every predecessor), which keeps the order consistent.
    """
    rng = rng or random.Random()
    p = Poset()
    chains = [[] for _ in range(w)]
    events = []
    for x in range(n):
        c = rng.randrange(w)
        ch = chains[c]
        if upgrowing or not ch or rng.random() < p_top:
            pos = len(ch)
        else:
            pos = rng.randrange(len(ch) + 1)
        D = 0
        U = 0
        if pos > 0:
            i = p.index(ch[pos - 1])
            D = p._down[i] | (1 << i)
        if pos < len(ch):
            i = p.index(ch[pos])
            U = p._up[i] | (1 << i)
        cand = list(range(len(p)))
        rng.shuffle(cand)
        for i in cand[: max(1, len(cand) // 4)]:
            if rng.random() >= p_extend or (D | U) >> i & 1:
                continue
            if rng.random() < 0.5 or upgrowing:
                # i goes below x: all of down(i)+i must lie below U
                if U and (p._up[i] & U) != U:
                    continue
                D |= p._down[i] | (1 << i)
            else:
                if D and (p._down[i] & D) != D:
                    continue
                U |= p._up[i] | (1 << i)
        preds = _minimal_gens(p, D)
        succs = _minimal_up_gens(p, U)
        p.add_point(x, preds, succs)
        ch.insert(pos, x)
        events.append(Arrive(x, tuple(preds), tuple(succs)))
    return events


def random_upgrowing_interval(n, w, rng=None, max_tries=50):
    """Up-growing interval order of width <= w with its representation.

    Each new interval ends at or after every existing left endpoint, so the
    point is maximal on arrival; candidates that would exceed width w (the
    largest overlap) are rejected.
    """
    rng = rng or random.Random()
    rep = IntervalRep()
    events = []
    # coordinates are half-integers; work in doubled integer units
    live = []  # intervals that may still meet a future one
    rights = []  # sorted (right, id) for down-set lookups
    lefts = []  # by id
    max_left = 0
    max_right = 0
    rand = rng.random
    for x in range(n):
        for _ in range(max_tries):
            l = max(0, max_left - 6 + int(rand() * 11))
            r = max(max_left, l) + 1 + int(rand() * 8)
            if _overlap_with(live, l, r) < w:
                break
        else:
            l = max_right + 2
            r = l + 2
        # maximal predecessors: right end at or past every left end below x;
        # scanning right ends downward, stop once they drop below that bound
        top = None
        cand = []
        for k in range(bisect_left(rights, (l, -1)) - 1, -1, -1):
            ry, y = rights[k]
            if top is not None and ry < top:
                break
            cand.append((ry, y))
            top = lefts[y] if top is None else max(top, lefts[y])
        down = tuple(sorted(y for ry, y in cand if ry >= top))
        insort(rights, (r, x))
        lefts.append(l)
        rep[x] = (Fraction(l, 2), Fraction(r, 2))
        max_left = max(max_left, l)
        max_right = max(max_right, r)
        # later left endpoints are >= max_left - 6
        live = [(ly, ry) for ly, ry in live if ry >= max_left - 6] + [(l, r)]
        events.append(Arrive(x, down))
    return events, rep


def _overlap_with(intervals, l, r):
    """Largest clique among the given intervals meeting [l, r], measured
    inside [l, r]."""
    meet = [(ly, ry) for ly, ry in intervals if ly <= r and ry >= l]
    pts = [l] + [ly for ly, _ in meet if ly >= l]
    return max(sum(1 for ly, ry in meet if ly <= q <= ry) for q in pts)


@dataclass
class SequenceSource:
    """PointSource replaying a fixed list of arrivals."""

    events: list
    pos: int = 0

    def next(self, view):
        if self.pos >= len(self.events):
            return None
        e = self.events[self.pos]
        self.pos += 1
        return e


def poset_events(p):
    """Arrivals presenting a poset in insertion order (down-sets only)."""
    return [Arrive(x, tuple(sorted(p.cover_preds(x)))) for x in p.points]
