"""Bitset helpers and augmenting-path bipartite matching over bitset adjacency.

A poset on dense indices 0..n-1 is stored as two lists of Python ints: ``up[i]``
has bit ``j`` set iff i < j, ``down[i]`` iff j < i.  The split bipartite graph
used for Dilworth/Koenig arguments has an edge u- -> v+ whenever u < v.
"""

from collections import deque
from itertools import compress, repeat


def iter_bits(m):
    """Indices of set bits, ascending."""
    if m.bit_count() * 8 > m.bit_length():
        # dense: scanning the binary string is cheaper than peeling bits
        s = bin(m)[:1:-1]
        return compress(range(len(s)), map("1".__eq__, s))
    return _peel(m)


_BITCHARS = bytes.maketrans(b"\x00\x01", b"01")


def mask_of_indices(ii):
    """Bitmask with the given indices set (duplicates allowed)."""
    ii = list(ii)
    if len(ii) < 16:
        m = 0
        for i in ii:
            m |= 1 << i
        return m
    ba = bytearray(max(ii) + 1)
    deque(map(ba.__setitem__, ii, repeat(1)), 0)
    return int(ba.translate(_BITCHARS)[::-1], 2)


def _peel(m):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def bits_list(m):
    return list(iter_bits(m))


def lowest(m):
    return (m & -m).bit_length() - 1


def find_path(root, adj, allowed, mate_fwd, mate_back):
    """Alternating path search from a free vertex ``root``.

    ``adj[u] & allowed`` are the neighbours of u on the far side;
    ``mate_back[v]`` is the near-side partner of far vertex v (or absent).
    Returns the list of (near, far) pairs to match along an augmenting path,
    or None.  Nothing is mutated.
    """
    visited = 0
    stack_u = [root]
    stack_c = [adj[root] & allowed]
    via = []
    while stack_u:
        c = stack_c[-1] & ~visited
        if not c:
            stack_u.pop()
            stack_c.pop()
            if via:
                via.pop()
            continue
        low = c & -c
        v = low.bit_length() - 1
        visited |= low
        stack_c[-1] = c ^ low
        w = mate_back.get(v)
        via.append(v)
        if w is None:
            return list(zip(stack_u, via))
        stack_u.append(w)
        stack_c.append(adj[w] & allowed)
    return None


def apply_path(path, mate_fwd, mate_back):
    for u, v in path:
        mate_fwd[u] = v
        mate_back[v] = u


def max_matching(up, R):
    """Maximum matching of the split graph restricted to the vertex mask R.

    Returns (ml, mr) dictionaries: ml[u] = v means u- is matched to v+.
    """
    ml, mr = {}, {}
    free_r = R
    unmatched = []
    for u in iter_bits(R):
        c = up[u] & free_r
        if c:
            low = c & -c
            v = low.bit_length() - 1
            ml[u] = v
            mr[v] = u
            free_r ^= low
        else:
            unmatched.append(u)
    # augmenting from u only ever adds u itself to the left side
    for u in unmatched:
        path = find_path(u, up, R, ml, mr)
        if path:
            apply_path(path, ml, mr)
    return ml, mr


def width_of(up, R):
    if not R:
        return 0
    ml, _ = max_matching(up, R)
    return R.bit_count() - len(ml)


class LevelMatcher:
    """Maximum matching of a growing vertex set, updated one vertex at a time.

    Adding a vertex keeps the width iff the matching grows by one, which
    happens iff an augmenting path starts at the new left copy or ends at the
    new right copy.
    """

    __slots__ = ("R", "ml", "mr")

    def __init__(self, up, R):
        self.R = R
        self.ml, self.mr = max_matching(up, R)

    @property
    def width(self):
        return self.R.bit_count() - len(self.ml)

    def probe(self, x, up, down):
        """Path that absorbs vertex x without raising width, else None."""
        R2 = self.R | (1 << x)
        path = find_path(x, up, R2, self.ml, self.mr)
        if path is not None:
            return ("f", path)
        path = find_path(x, down, R2, self.mr, self.ml)
        if path is not None:
            return ("r", path)
        return None

    def commit(self, x, probe_result):
        self.R |= 1 << x
        if probe_result is None:
            return
        kind, path = probe_result
        if kind == "f":
            apply_path(path, self.ml, self.mr)
        else:
            apply_path(path, self.mr, self.ml)
