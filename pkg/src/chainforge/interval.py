"""Interval orders: recognition, 2+2 witnesses, and representations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bits import iter_bits
from .errors import NotIntervalOrder, OrderChanged, ParseError
from .poset import Poset


@dataclass(frozen=True)
class TwoPlusTwoWitness:
    a: object
    b: object
    c: object
    d: object

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))


class IntervalRep(dict):
    """Mapping id -> (left, right) with exact rational endpoints."""

    def __init__(self, data=()):
        super().__init__()
        for k, (l, r) in dict(data).items():
            self[k] = (Fraction(l), Fraction(r))

    def less(self, x, y):
        return self[x][1] < self[y][0]

    def to_poset(self, order=None):
        ids = list(order) if order is not None else sorted(self, key=lambda k: (self[k][0], k))
        p = Poset()
        for x in ids:
            p.add_point(x, [y for y in p.points if self.less(y, x)])
        return p

    def to_text(self, order=None):
        ids = list(order) if order is not None else sorted(self)
        return "".join(f"i {x} {_frac(self[x][0])} {_frac(self[x][1])}\n" for x in ids)

    @classmethod
    def from_text(cls, text):
        rep = cls()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tok = line.split()
            if tok[0] != "i" or len(tok) != 4:
                raise ParseError(f"line {lineno}: expected 'i <id> <left> <right>'", line=lineno)
            rep[int(tok[1])] = (Fraction(tok[2]), Fraction(tok[3]))
        return rep


def _frac(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def is_interval_order(p):
    """True, or a 2+2 witness (a<b, c<d, a||d, c||b)."""
    n = len(p)
    downs = sorted(range(n), key=lambda i: p._down[i].bit_count())
    for s, t in zip(downs, downs[1:]):
        ds, dt = p._down[s], p._down[t]
        if ds & ~dt:
            a = next(iter_bits(ds & ~dt))
            c = next(iter_bits(dt & ~ds))
            ids = p._ids
            return TwoPlusTwoWitness(ids[a], ids[s], ids[c], ids[t])
    return True


def find_2p2_bruteforce(p):
    pts = p.points
    for a in pts:
        for b in p.up(a):
            for c in pts:
                for d in p.up(c):
                    if len({a, b, c, d}) == 4 and not p.comparable(a, d) and not p.comparable(c, b):
                        return TwoPlusTwoWitness(a, b, c, d)
    return None


def realize(p):
    """Integer interval representation from the chain of open down-sets.

    left(x) = 2 * rank of down(x); right(x) = 2 * (rank of the first down-set
    containing x) - 1, or one past every left endpoint when none does.
    """
    if is_interval_order(p) is not True:
        raise NotIntervalOrder("poset contains a 2+2", witness=is_interval_order(p))
    distinct = sorted({d for d in p._down}, key=int.bit_count)
    rank = {d: r for r, d in enumerate(distinct)}
    rep = IntervalRep()
    top = 2 * len(distinct) + 1
    for i, x in enumerate(p._ids):
        left = 2 * rank[p._down[i]]
        first = next((r for r, d in enumerate(distinct) if d >> i & 1), None)
        right = top if first is None else 2 * first - 1
        rep[x] = (Fraction(left), Fraction(right))
    return rep


def rearrange_right_endpoints(rep, targets):
    """Move right endpoints to ``targets`` provided the order is unchanged."""
    new = IntervalRep(rep)
    for x, r in targets.items():
        r = Fraction(r)
        l0, r0 = rep[x]
        if r <= l0:
            raise OrderChanged(f"interval {x} would become degenerate", pair=(x, x))
        for y, (ly, _) in rep.items():
            if y == x:
                continue
            if (r0 < ly) != (r < ly):
                raise OrderChanged(f"relation between {x} and {y} changes", pair=(x, y))
        new[x] = (l0, r)
    return new


def max_overlap(rep):
    """Largest number of pairwise intersecting intervals (= width)."""
    ev = []
    for l, r in rep.values():
        ev.append((l, 0))
        ev.append((r, 1))
    ev.sort()
    cur = best = 0
    for _, kind in ev:
        if kind == 0:
            cur += 1
            best = max(best, cur)
        else:
            cur -= 1
    return best
