"""From unrestricted local boards to core-disjoint ones.

Three consecutive maximum antichains L, M, T may share points.  Inflation
gives every (antichain, point) pair its own copy, with x^A below y^B iff
x <= y and A sits strictly below B.  Restricting the inflated order to the
union of the three pairwise cores yields a core-disjoint instance of the
same width.
"""

from __future__ import annotations

from ..cores import core_edges_small, core, RegularBipartite

TAGS = ("L", "M", "T")


def inflate_levels(L, M, T, leq):
    """Copies of the three levels and the inflated cross-level relation.

    ``leq`` is a callable (x, y) -> bool for the reflexive order.  Returns
    (Lb, Mb, Tb, edges) with edges = {"lm": ..., "mt": ..., "lt": ...}.
    """
    Lb = tuple(("L", x) for x in L)
    Mb = tuple(("M", x) for x in M)
    Tb = tuple(("T", x) for x in T)

    def rel(A, B):
        return frozenset((a, b) for a in A for b in B if leq(a[1], b[1]))

    return Lb, Mb, Tb, {"lm": rel(Lb, Mb), "mt": rel(Mb, Tb), "lt": rel(Lb, Tb)}


def _core(A, B, E):
    if len(A) <= 4:
        return core_edges_small(A, B, E)
    return core(RegularBipartite(A, B, E)).edges


def dcore(Lb, Mb, Tb, edges):
    """Union of the three pairwise cores, as a dict like ``edges``."""
    return {
        "lm": _core(Lb, Mb, edges["lm"]),
        "mt": _core(Mb, Tb, edges["mt"]),
        "lt": _core(Lb, Tb, edges["lt"]),
    }


def dcore_relation(edges):
    return set(edges["lm"]) | set(edges["mt"]) | set(edges["lt"])
