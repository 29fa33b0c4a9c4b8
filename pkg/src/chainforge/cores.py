"""Regular bipartite posets, their cores, and the nine cores of width at most 3."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import networkx as nx

from .errors import LevelMismatch, NoPerfectMatching, NotACore, WidthTooLarge


@dataclass(frozen=True)
class RegularBipartite:
    lower: tuple
    upper: tuple
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "edges", frozenset(self.edges))

    @property
    def w(self):
        return len(self.lower)

    def up(self, a):
        return {b for (x, b) in self.edges if x == a}

    def down(self, b):
        return {a for (a, y) in self.edges if y == b}

    def lower_degrees(self):
        return sorted(len(self.up(a)) for a in self.lower)

    def upper_degrees(self):
        return sorted(len(self.down(b)) for b in self.upper)


def perfect_matching(rb):
    """Some perfect matching as a dict lower -> upper, or None."""
    adj = {a: sorted(rb.up(a), key=rb.upper.index) for a in rb.lower}
    mate = {}

    def aug(a, seen):
        for b in adj[a]:
            if b in seen:
                continue
            seen.add(b)
            if b not in mate or aug(mate[b], seen):
                mate[b] = a
                return True
        return False

    for a in rb.lower:
        if not aug(a, set()):
            return None
    return {a: b for b, a in mate.items()}


def core(rb):
    """Union of all perfect matchings.

    An edge lies in some perfect matching iff it is matched in a fixed one or
    both ends sit in one strongly connected component of the digraph with
    unmatched edges oriented up and matched edges oriented down.
    """
    if len(rb.lower) != len(rb.upper):
        raise NoPerfectMatching("levels differ in size", rb=rb)
    pm = perfect_matching(rb)
    if pm is None:
        raise NoPerfectMatching("no perfect matching", rb=rb)
    g = nx.DiGraph()
    g.add_nodes_from(("L", a) for a in rb.lower)
    g.add_nodes_from(("U", b) for b in rb.upper)
    for a, b in rb.edges:
        if pm[a] == b:
            g.add_edge(("U", b), ("L", a))
        else:
            g.add_edge(("L", a), ("U", b))
    comp = {}
    for k, scc in enumerate(nx.strongly_connected_components(g)):
        for v in scc:
            comp[v] = k
    keep = {(a, b) for a, b in rb.edges if pm[a] == b or comp[("L", a)] == comp[("U", b)]}
    return RegularBipartite(rb.lower, rb.upper, keep)


def core_edges_small(lower, upper, edges):
    """Same as ``core`` by enumerating permutations; used for tiny levels."""
    keep = set()
    w = len(lower)
    for perm in permutations(range(w)):
        ms = [(lower[j], upper[perm[j]]) for j in range(w)]
        if all(e in edges for e in ms):
            keep.update(ms)
    if not keep and w:
        raise NoPerfectMatching("no perfect matching")
    return frozenset(keep)


def is_core(rb):
    try:
        return core(rb).edges == rb.edges
    except NoPerfectMatching:
        return False


# ----------------------------------------------------------------------
# the nine canonical cores; pairs are 0-based (lower position, upper position)

CANONICAL = {
    "P1": frozenset({(0, 0)}),
    "P11": frozenset({(0, 0), (1, 1)}),
    "P22": frozenset({(0, 0), (0, 1), (1, 0), (1, 1)}),
    "P111": frozenset({(0, 0), (1, 1), (2, 2)}),
    "P122": frozenset({(0, 0), (1, 1), (1, 2), (2, 1), (2, 2)}),
    "P222": frozenset({(0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 2)}),
    "P223": frozenset({(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)}),
    "P233": frozenset({(j, k) for j in range(3) for k in range(3)} - {(2, 0)}),
    "P333": frozenset({(j, k) for j in range(3) for k in range(3)}),
}

_BY_DEGREES = {
    (1,): "P1",
    (1, 1): "P11",
    (2, 2): "P22",
    (1, 1, 1): "P111",
    (1, 2, 2): "P122",
    (2, 2, 2): "P222",
    (2, 2, 3): "P223",
    (2, 3, 3): "P233",
    (3, 3, 3): "P333",
}

RANK = {"P111": 0, "P122": 1, "P222": 2, "P223": 3, "P233": 4, "P333": 5}


@dataclass(frozen=True)
class CoreClass:
    tag: str
    lower: tuple  # lower[j] = actual id playing canonical lower point j
    upper: tuple

    def relabel(self, pairs):
        return {(self.lower[j], self.upper[k]) for j, k in pairs}


def alignments(edges, lower, upper, pattern):
    """All (lower order, upper order) tuples carrying ``pattern`` onto edges."""
    w = len(lower)
    res = []
    for pl in permutations(lower):
        for pu in permutations(upper):
            if all(((pl[j], pu[k]) in edges) == ((j, k) in pattern) for j in range(w) for k in range(w)):
                res.append((pl, pu))
    return res


def classify_edges(lower, upper, edges, check=True):
    w = len(lower)
    if w > 3:
        raise WidthTooLarge(f"core of width {w} > 3", width=w)
    if check and core_edges_small(lower, upper, edges) != frozenset(edges):
        raise NotACore("relation is not the union of its perfect matchings")
    deg = tuple(sorted(sum((a, b) in edges for b in upper) for a in lower))
    tag = _BY_DEGREES.get(deg)
    if tag is None:
        raise NotACore(f"degree multiset {deg} matches no core")
    al = alignments(edges, lower, upper, CANONICAL[tag])
    if not al:
        raise NotACore(f"degrees {deg} but not isomorphic to {tag}")
    pl, pu = al[0]
    return CoreClass(tag, pl, pu)


def classify_core(rb):
    if rb.w > 3:
        raise WidthTooLarge(f"core of width {rb.w} > 3", width=rb.w)
    if not is_core(rb):
        raise NotACore("relation is not the union of its perfect matchings", rb=rb)
    return classify_edges(rb.lower, rb.upper, rb.edges, check=False)


def compose_matched_cores(lm, mt):
    if set(lm.upper) != set(mt.lower):
        raise LevelMismatch("upper level of the first pair differs from lower level of the second")
    up2 = {}
    for m, t in mt.edges:
        up2.setdefault(m, set()).add(t)
    edges = {(l, t) for l, m in lm.edges for t in up2.get(m, ())}
    return RegularBipartite(lm.lower, mt.upper, edges)


def all_perfect_matchings(rb):
    """Brute force, oracle use only."""
    res = []
    for perm in permutations(rb.upper):
        ms = frozenset(zip(rb.lower, perm))
        if ms <= rb.edges:
            res.append(ms)
    return res
