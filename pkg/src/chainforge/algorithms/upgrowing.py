"""Level-based partitioner for up-growing interval orders (at most 2w-1 chains).

Levels L_1..L_w are high antichains with nested closed up-sets, |L_i| = i.
Each level owns two chain slots, alpha_i and beta_i; beta_i is kept ready to
take a point arriving above L_i.  Slot beta_1 is never used.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..bits import iter_bits, max_matching
from ..errors import NotIntervalOrder, NotUpGrowing
from ..poset import Poset


def _hma_mask(p, R):
    ml, mr = max_matching(p._up, R)
    zl = zr = 0
    frontier = [u for u in iter_bits(R) if u not in ml]
    for u in frontier:
        zl |= 1 << u
    while frontier:
        nxt = []
        for u in frontier:
            for v in iter_bits(p._up[u] & R & ~zr):
                zr |= 1 << v
                w = mr.get(v)
                if w is not None and not (zl >> w & 1):
                    zl |= 1 << w
                    nxt.append(w)
        frontier = nxt
    return zl & ~zr


@dataclass
class IntervalLevelState:
    poset: Poset = field(default_factory=Poset)
    levels: list = field(default_factory=list)  # bitmasks, levels[i-1] = L_i
    alpha: list = field(default_factory=list)  # physical chain labels or None
    beta: list = field(default_factory=list)
    members: dict = field(default_factory=dict)  # label -> bitmask
    n_chains: int = 0

    @property
    def w(self):
        return len(self.levels)

    def level(self, i):
        return self.poset.ids(self.levels[i - 1])

    def chain(self, label):
        return self.poset.ids(self.members.get(label, 0))


def _new_chain(s):
    s.n_chains += 1
    s.members[s.n_chains] = 0
    return s.n_chains


def up_growing_interval_step(s, x, down):
    """Insert maximal point x with closed down-set ``down``; returns (s, label)."""
    p = s.poset
    p.add_point(x, down)
    i = p.index(x)
    xb = 1 << i
    d = p._down[i]
    w = s.w
    if w == 0 or not (d & s.levels[-1]):
        # width grows
        top = s.levels[-1] if w else 0
        s.levels.append(top | xb)
        label = _new_chain(s)
        s.alpha.append(label)
        s.beta.append(None)
    else:
        i0 = next(k for k in range(w) if d & s.levels[k]) + 1
        for k in range(i0 - 1, w):
            L = s.levels[k]
            up = L
            for j in iter_bits(L):
                up |= p._up[j]
            s.levels[k] = _hma_mask(p, up)
        prev = s.levels[i0 - 2] if i0 >= 2 else 0
        if s.levels[i0 - 1] != prev | xb:
            raise NotIntervalOrder("level update broke; the input is not an interval order", id=x)
        if i0 == 1:
            label = s.alpha[0]
        else:
            label = s.beta[i0 - 1]
            if label is None:
                label = _new_chain(s)
            elif s.members[label] & ~d:
                raise NotIntervalOrder("a 2+2 blocks the reserved chain", id=x)
            s.alpha[i0 - 1], s.beta[i0 - 1] = label, s.alpha[i0 - 1]
    s.members[label] |= xb
    return s, label


class UpGrowingInterval:
    name = "upgrowing-interval"

    def __init__(self):
        self.state = IntervalLevelState()

    def assign(self, x, down, up=()):
        if up:
            raise NotUpGrowing(f"point {x} is not maximal", id=x)
        _, label = up_growing_interval_step(self.state, x, down)
        return label


def check_interval_state(s):
    """Raise AssertionError if a level/chain invariant fails."""
    from ..poset import is_high, is_chain, upset, downset

    p = s.poset
    prev_up = set()
    prev_level = set()
    covered = set()
    for k in range(1, s.w + 1):
        L = s.level(k)
        assert len(L) == k, f"|L_{k}| = {len(L)}"
        assert is_high(p, L), f"L_{k} is not high"
        U = upset(p, L)
        assert prev_up <= U, f"up-sets of L_{k-1}, L_{k} not nested"
        a = s.chain(s.alpha[k - 1])
        assert a <= downset(p, L) - upset(p, prev_level), f"alpha_{k} misplaced"
        if s.beta[k - 1] is not None:
            b = s.chain(s.beta[k - 1])
            assert b <= downset(p, L, closed=False), f"beta_{k} misplaced"
        else:
            b = set()
        assert is_chain(p, a) and is_chain(p, b)
        assert not (a & covered) and not (b & covered) and not (a & b)
        covered |= a | b
        prev_up, prev_level = U, L
    assert covered == set(p.points), "chains do not cover the poset"
    if s.w:
        assert s.beta[0] is None
