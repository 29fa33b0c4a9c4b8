"""Finite posets with eagerly closed bitset relations, plus antichain machinery."""

from __future__ import annotations

from collections.abc import Set
from itertools import combinations

from .bits import find_path, iter_bits, mask_of_indices, max_matching, width_of
from .errors import (
    DuplicateId,
    NotMaximumAntichain,
    ParseError,
    SpoilerIllegalMove,
    UnknownPredecessor,
)


class IdSet(Set):
    """Read-only set of ids given by a bitmask over a poset's indices.

    Ids are only materialized when iterated; a poset that shares the source's
    id order takes the mask as is.
    """

    __slots__ = ("poset", "mask")

    def __init__(self, poset, mask):
        self.poset = poset
        self.mask = mask

    def __contains__(self, x):
        i = self.poset._idx.get(x)
        return i is not None and bool(self.mask >> i & 1)

    def __iter__(self):
        return map(self.poset._ids.__getitem__, iter_bits(self.mask))

    def __len__(self):
        return self.mask.bit_count()

    def __repr__(self):
        return f"IdSet({sorted(self)!r})"

    __hash__ = Set._hash


class Poset:
    """Strict partial order over hashable ids (public ids are non-negative ints).

    Points get dense indices in insertion order.  ``_down[i]``/``_up[i]`` are
    bitsets of strictly smaller/larger points and are kept transitively closed.
    """

    __slots__ = ("_ids", "_idx", "_down", "_up")

    def __init__(self):
        self._ids = []
        self._idx = {}
        self._down = []
        self._up = []

    # construction -----------------------------------------------------
    @classmethod
    def from_relations(cls, ids, preds):
        """Build from ids in order with a mapping id -> iterable of predecessors."""
        p = cls()
        for x in ids:
            p.add_point(x, preds.get(x, ()))
        return p

    def copy(self):
        q = Poset()
        q._ids = list(self._ids)
        q._idx = dict(self._idx)
        q._down = list(self._down)
        q._up = list(self._up)
        return q

    def add_point(self, x, preds=(), succs=()):
        """Insert x above ``preds`` and below ``succs`` (both closed here).

        With no successors the new point is maximal, which is the common case.
        Raises SpoilerIllegalMove if the insertion would alter the order among
        existing points.
        """
        if x in self._idx:
            raise DuplicateId(f"id {x} already present", id=x)
        d = self._close(self._mask_of(preds, x, "predecessor"), self._down, high_first=True)
        u = self._close(self._mask_of(succs, x, "successor"), self._up, high_first=False)
        if u:
            if d & u:
                raise SpoilerIllegalMove(f"point {x} would create a cycle", id=x)
            for i in iter_bits(d):
                if u & ~self._up[i]:
                    raise SpoilerIllegalMove(
                        f"point {x} changes relations among existing points", id=x
                    )
        return self._insert(x, d, u)

    def _mask_of(self, xs, x, what):
        if type(xs) is IdSet and xs.mask.bit_length() <= len(self._ids):
            src = xs.poset._ids
            n = xs.mask.bit_length()
            if src is self._ids or src[:n] == self._ids[:n]:
                return xs.mask
        idx = self._idx
        try:
            ii = list(map(idx.__getitem__, xs))
        except KeyError as err:
            q = err.args[0]
            raise UnknownPredecessor(f"unknown {what} {q}", id=x, **{what[:4]: q}) from None
        return mask_of_indices(ii)

    @staticmethod
    def _close(m, rel, high_first):
        """Close a mask under ``rel``, touching only its extremal points."""
        out = 0
        while m:
            if high_first:
                i = m.bit_length() - 1
            else:
                i = (m & -m).bit_length() - 1
            out |= rel[i] | (1 << i)
            m &= ~out
        return out

    def _insert(self, x, d, u):
        n = len(self._ids)
        b = 1 << n
        self._ids.append(x)
        self._idx[x] = n
        self._down.append(d)
        self._up.append(u)
        up, down = self._up, self._down
        for i in iter_bits(d):
            up[i] |= b
        for i in iter_bits(u):
            down[i] |= b
        return self

    # queries ----------------------------------------------------------
    def __len__(self):
        return len(self._ids)

    def __contains__(self, x):
        return x in self._idx

    @property
    def points(self):
        return list(self._ids)

    def index(self, x):
        return self._idx[x]

    def less(self, a, b):
        return bool(self._up[self._idx[a]] >> self._idx[b] & 1)

    def leq(self, a, b):
        return a == b or self.less(a, b)

    def comparable(self, a, b):
        return a == b or self.less(a, b) or self.less(b, a)

    def down(self, x):
        return self.ids(self._down[self._idx[x]])

    def up(self, x):
        return self.ids(self._up[self._idx[x]])

    def mask(self, xs):
        return mask_of_indices(map(self._idx.__getitem__, xs))

    def ids(self, m):
        return set(map(self._ids.__getitem__, iter_bits(m)))

    def all_mask(self):
        return (1 << len(self._ids)) - 1

    def down_mask(self, x):
        return self._down[self._idx[x]]

    def up_mask(self, x):
        return self._up[self._idx[x]]

    def cover_preds(self, x):
        """Immediate predecessors of x."""
        d = self._down[self._idx[x]]
        res = []
        for i in iter_bits(d):
            if not (self._up[i] & d):
                res.append(self._ids[i])
        return res

    def relations(self):
        return {(a, b) for a in self._ids for b in self.up(a)}

    def subposet(self, xs):
        xs = set(xs)
        q = Poset()
        for x in self._ids:
            if x in xs:
                q.add_point(x, [y for y in self.down(x) if y in xs])
        return q

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return set(self._ids) == set(other._ids) and self.relations() == other.relations()

    def __repr__(self):
        return f"Poset(n={len(self)})"

    # text format ------------------------------------------------------
    def to_text(self):
        lines = []
        for x in self._ids:
            preds = sorted(self.cover_preds(x))
            lines.append(" ".join(["p", str(x)] + [str(q) for q in preds]))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text):
        p = cls()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tok = line.split()
            if tok[0] != "p" or len(tok) < 2:
                raise ParseError(f"line {lineno}: expected 'p <id> [<pred>...]'", line=lineno)
            try:
                nums = [int(t) for t in tok[1:]]
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer id", line=lineno) from None
            p.add_point(nums[0], nums[1:])
        return p


# ----------------------------------------------------------------------
# antichains

def _restrict_mask(p, restrict):
    return p.all_mask() if restrict is None else p.mask(restrict)


def is_antichain(p, xs):
    m = p.mask(xs)
    return all(not (p._up[i] & m) for i in iter_bits(m))


def is_chain(p, xs):
    xs = list(xs)
    m = p.mask(xs)
    return all((p._up[i] | p._down[i] | (1 << i)) & m == m for i in iter_bits(m))


def width(p, restrict=None):
    return width_of(p._up, _restrict_mask(p, restrict))


def min_chain_partition(p, restrict=None):
    """Minimum chain partition (Dilworth) read off a maximum matching."""
    R = _restrict_mask(p, restrict)
    ml, mr = max_matching(p._up, R)
    chains = []
    for i in iter_bits(R):
        if i in mr:
            continue
        chain = [p._ids[i]]
        while i in ml:
            i = ml[i]
            chain.append(p._ids[i])
        chains.append(chain)
    chains.sort(key=lambda c: min(c))
    return chains


def _has_antichain_of(p, cand, r):
    """Does the mask ``cand`` contain an antichain of size r?"""
    if r <= 0:
        return True
    cnt = cand.bit_count()
    if cnt < r:
        return False
    if r == 1:
        return True
    if r == 2:
        for i in iter_bits(cand):
            if cand & ~(p._up[i] | p._down[i] | (1 << i)):
                return True
        return False
    return width_of(p._up, cand) >= r


def _lexmin_antichain_mask(p, R, k):
    """Lexicographically smallest (by sorted id) antichain of size k inside R."""
    order = sorted(iter_bits(R), key=lambda i: p._ids[i])
    chosen = 0
    cand = R
    need = k
    for i in order:
        if need == 0:
            break
        if not (cand >> i & 1):
            continue
        rest = cand & ~(p._up[i] | p._down[i] | (1 << i))
        if _has_antichain_of(p, rest, need - 1):
            chosen |= 1 << i
            cand = rest
            need -= 1
        else:
            cand &= ~(1 << i)
    return chosen


def max_antichain(p, restrict=None):
    """A maximum antichain of the restricted subposet (lex-smallest sorted ids)."""
    R = _restrict_mask(p, restrict)
    if not R:
        return frozenset()
    k = width_of(p._up, R)
    return frozenset(p.ids(_lexmin_antichain_mask(p, R, k)))


def upset(p, xs, closed=True):
    m = 0
    for x in xs:
        i = p._idx[x]
        m |= p._up[i] | ((1 << i) if closed else 0)
    return p.ids(m)


def downset(p, xs, closed=True):
    m = 0
    for x in xs:
        i = p._idx[x]
        m |= p._down[i] | ((1 << i) if closed else 0)
    return p.ids(m)


def antichain_leq(p, A, B):
    """A ⊴ B: every point of A lies below or at some point of B."""
    Bm = p.mask(B)
    for a in A:
        i = p._idx[a]
        if not ((p._up[i] | (1 << i)) & Bm):
            return False
    return True


def maximal(p, xs):
    m = p.mask(xs)
    return frozenset(p._ids[i] for i in iter_bits(m) if not (p._up[i] & m))


def minimal(p, xs):
    m = p.mask(xs)
    return frozenset(p._ids[i] for i in iter_bits(m) if not (p._down[i] & m))


def _check_maximum(p, A, restrict, name):
    A = frozenset(A)
    if restrict is not None:
        R = set(restrict)
        if not A <= R:
            raise NotMaximumAntichain(f"{name} leaves the ground set", antichain=A)
    if not is_antichain(p, A) or len(A) != width(p, restrict):
        raise NotMaximumAntichain(f"{name} is not a maximum antichain", antichain=A)
    return A


def ma_join(p, A, B, restrict=None, check=True):
    if check:
        A = _check_maximum(p, A, restrict, "A")
        B = _check_maximum(p, B, restrict, "B")
    return maximal(p, set(A) | set(B))


def ma_meet(p, A, B, restrict=None, check=True):
    if check:
        A = _check_maximum(p, A, restrict, "A")
        B = _check_maximum(p, B, restrict, "B")
    return minimal(p, set(A) | set(B))


def hma(p, restrict=None):
    """Top element of the maximum-antichain lattice of the restricted subposet.

    Koenig construction: vertices alternating-reachable from free left copies
    (chain tops of a minimum chain cover) give a minimum vertex cover; points
    whose left copy is reachable while the right copy is not form the highest
    maximum antichain.
    """
    R = _restrict_mask(p, restrict)
    if not R:
        raise ValueError("hma of an empty ground set is undefined")
    ml, mr = max_matching(p._up, R)
    zl = 0
    zr = 0
    frontier = [u for u in iter_bits(R) if u not in ml]
    for u in frontier:
        zl |= 1 << u
    while frontier:
        nxt = []
        for u in frontier:
            c = p._up[u] & R & ~zr
            for v in iter_bits(c):
                zr |= 1 << v
                w = mr.get(v)
                if w is not None and not (zl >> w & 1):
                    zl |= 1 << w
                    nxt.append(w)
        frontier = nxt
    return frozenset(p.ids(zl & ~zr))


def is_high(p, A, restrict=None):
    """No other antichain of size |A| lies inside the closed up-set of A."""
    A = frozenset(A)
    R = _restrict_mask(p, restrict)
    up = p.mask(upset(p, A)) & R
    k = len(A)
    if width_of(p._up, up) > k:
        return False
    # an antichain of size k in A-up other than A exists iff some a in A can be
    # dropped while the rest of A-up keeps an antichain of size k
    for a in A:
        if width_of(p._up, up & ~(1 << p._idx[a])) >= k:
            return False
    return True


def all_antichains(p, restrict=None):
    """Brute-force enumeration (exponential, oracle use only)."""
    pts = sorted(p.points if restrict is None else restrict)
    res = []
    for r in range(len(pts) + 1):
        for c in combinations(pts, r):
            if is_antichain(p, c):
                res.append(frozenset(c))
    return res


__all__ = [
    "Poset",
    "is_antichain",
    "is_chain",
    "width",
    "min_chain_partition",
    "max_antichain",
    "upset",
    "downset",
    "antichain_leq",
    "maximal",
    "minimal",
    "ma_join",
    "ma_meet",
    "hma",
    "is_high",
    "all_antichains",
    "find_path",
]
