"""Colorer for the core-disjoint local game, widths 1 to 3.

Boards are plain data: levels ``L`` and ``T`` (tuples of ids), the cover
edges ``E`` (pairs (l, t)), and a multicoloring ``chi`` (id -> frozenset).
A round hands in a middle antichain ``M`` with edge sets ``E_lm`` and
``E_mt``; the colorer returns nonempty color sets for M.

Notation in the case table: ``(j, i)`` stands for the selected private color
of edge (l_j, t_i) under the current alignment, 1-based; ``"a"``/``"b"``
stand for the two extra shared colors available when L < T at width 3.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import permutations

from ..cores import CANONICAL, RANK, classify_edges
from ..errors import LocalColoringFailed, UnmatchedCase, WidthTooLarge

log = logging.getLogger("chainforge.local")

# ----------------------------------------------------------------------
# opening move

FIRST_ROUND = {
    1: ([{1}], [{1}]),
    2: ([{1, 3}, {2, 4}], [{1, 2}, {3, 4}]),
    3: (
        [{1, 4, 7, 10}, {2, 5, 8, 11}, {3, 6, 9}],
        [{1, 2, 3, 10}, {4, 5, 6, 11}, {7, 8, 9}],
    ),
}


def local_first_round(w, L=None, T=None, offset=0):
    """Palette and coloring of the complete board L < T."""
    if w > 3:
        raise WidthTooLarge(f"no local colorer for width {w}", width=w)
    if w < 1:
        raise ValueError("width must be positive")
    L = tuple(range(w)) if L is None else tuple(L)
    T = tuple(range(w, 2 * w)) if T is None else tuple(T)
    cl, ct = FIRST_ROUND[w]
    chi = {}
    for x, cs in zip(L, cl):
        chi[x] = frozenset(c + offset for c in cs)
    for x, cs in zip(T, ct):
        chi[x] = frozenset(c + offset for c in cs)
    palette = frozenset().union(*chi.values())
    return palette, chi


# ----------------------------------------------------------------------
# board helpers

def private(chi, l, t):
    return chi[l] & chi[t]


def gamma0(E, chi):
    """Smallest private color per edge; raises if an edge has none."""
    g = {}
    for l, t in E:
        p = chi[l] & chi[t]
        if not p:
            raise LocalColoringFailed(f"edge {(l, t)} has no private color", edge=(l, t))
        g[(l, t)] = min(p)
    return g


def extras(L, T, E, chi, g0):
    """Shared colors outside the selection, as (color, l, t) triples."""
    used = set(g0.values())
    res = []
    for l, t in sorted(E, key=repr):
        for c in sorted(chi[l] & chi[t]):
            if c not in used:
                res.append((c, l, t))
    return res


def check_invariant(L, T, E, chi, w=None):
    """Every edge has a private color; complete width-3 boards carry two
    disjoint edges with at least two private colors each."""
    w = len(L) if w is None else w
    for l, t in E:
        if not (chi[l] & chi[t]):
            raise LocalColoringFailed(f"edge {(l, t)} lost its private color", edge=(l, t))
    if w == 3 and len(E) == 9:
        rich = [(l, t) for l, t in E if len(chi[l] & chi[t]) >= 2]
        if not any(a[0] != b[0] and a[1] != b[1] for a in rich for b in rich):
            raise LocalColoringFailed("complete board lacks two disjoint doubly-private edges")


def check_response(L, M, T, E_lm, E_mt, chi, col):
    """Disjoint nonempty sets, colors drawn from shared colors and every
    color class a chain."""
    seen = set()
    for m in M:
        cs = col.get(m)
        if not cs:
            raise LocalColoringFailed(f"middle point {m} got no color", point=m)
        if cs & seen:
            raise LocalColoringFailed("middle color sets overlap", point=m)
        seen |= cs
        for c in cs:
            ls = [l for l in L if c in chi[l]]
            ts = [t for t in T if c in chi[t]]
            if not ls or not ts:
                raise LocalColoringFailed(f"color {c} is not shared by both levels", color=c)
            if any((l, m) not in E_lm for l in ls) or any((m, t) not in E_mt for t in ts):
                raise LocalColoringFailed(f"color {c} on {m} breaks a chain", color=c, point=m)


# ----------------------------------------------------------------------
# case table

def _pat(*pairs):
    return frozenset((a - 1, b - 1) for a, b in (divmod(p, 10) for p in pairs))


MT_122 = _pat(11, 12, 21, 22, 33)
MT_222 = _pat(11, 12, 21, 23, 32, 33)
MT_223 = _pat(11, 12, 21, 22, 23, 32, 33)
MT_223B = _pat(11, 12, 13, 21, 23, 32, 33)
MT_233_M3 = _pat(11, 12, 13, 21, 22, 23, 32, 33)  # m3 misses t1
MT_233_M2 = _pat(11, 12, 13, 21, 23, 31, 32, 33)  # m2 misses t2
MT_233_M1 = _pat(11, 12, 21, 22, 23, 31, 32, 33)  # m1 misses t3
MT_233_M3T1 = _pat(11, 12, 13, 21, 22, 23, 32, 33)
P333 = CANONICAL["P333"]


def S(*codes):
    """Color-set template: integers ji -> (j, i); strings pass through."""
    out = []
    for c in codes:
        out.append(c if isinstance(c, str) else divmod(c, 10))
    return tuple(out)


class Variant:
    """One aligned configuration of a case with its coloring template."""

    def __init__(self, name, lm, mt, sets=None, rule=None, cond=None, prefer=None):
        self.name = name
        self.lm = lm
        self.mt = mt
        self.sets = sets
        self.rule = rule
        self.cond = cond
        self.prefer = prefer


def _rule_111(ctx):
    return [
        [(k + 1, i + 1) for i in range(ctx.w) if (ctx.M[k], ctx.T[i]) in ctx.E_mt]
        for k in range(ctx.w)
    ]


def _common_top(ctx):
    for s in range(ctx.w):
        if (ctx.M[1], ctx.T[s]) in ctx.E_mt and (ctx.M[2], ctx.T[s]) in ctx.E_mt:
            return s
    return None


def _rule_122_swap(ctx):
    s = _common_top(ctx)
    up = [[i for i in range(3) if (ctx.M[k], ctx.T[i]) in ctx.E_mt] for k in range(3)]
    m1 = [(1, i + 1) for i in up[0]]
    m2 = [(2, i + 1) for i in up[1] if i != s] + [(3, s + 1)]
    m3 = [(3, i + 1) for i in up[2] if i != s] + [(2, s + 1)]
    return [m1, m2, m3]


def _cond_122_common(ctx):
    return _common_top(ctx) is not None


def _has_extra_on(ctx, l=None, t=None):
    for c, a, b in ctx.extras:
        if (l is None or a == l) and (t is None or b == t):
            return c
    return None


def _rule_223_233b(ctx):
    # alpha: an extra color whose upper end is t1
    alpha = _has_extra_on(ctx, t=ctx.T[0])
    if alpha is None:
        return None
    l3 = ctx.L[2]
    if alpha not in ctx.chi[l3]:
        return [[(1, 3), (2, 2), ("c", alpha)], [(1, 1), (2, 3), (3, 1)], [(2, 1), (3, 2), (3, 3)]]
    return [[(1, 2), (1, 3), (2, 1)], [(1, 1), (2, 3), (3, 1)], [(2, 2), (3, 3), ("c", alpha)]]


def _cond_233_233b(ctx):
    return (
        _has_extra_on(ctx, l=ctx.L[1]) is not None
        and _has_extra_on(ctx, t=ctx.T[1]) is not None
    )


def _cond_233_333(ctx):
    return _has_extra_on(ctx, l=ctx.L[1]) is not None


def _rule_233_333(ctx):
    alpha = _has_extra_on(ctx, l=ctx.L[1])
    beta = next(c for c, _, _ in ctx.extras if c != alpha)
    return [
        [(1, 3), (2, 1), (2, 2)],
        [(1, 2), (3, 1), (3, 3), ("c", alpha)],
        [(1, 1), (2, 3), (3, 2), ("c", beta)],
    ]


def _rule_233_233b(ctx):
    return [[(1, 2), (2, 1), (2, 3)], [(1, 1), (3, 3), "a", "b"], [(1, 3), (2, 2), (3, 2)]]


P = CANONICAL

CASES = {
    # width 1 and 2
    ("P1", "P1"): [Variant("1", P["P1"], P["P1"], [S(11)])],
    ("P11", "P11"): [Variant("11-11", P["P11"], P["P11"], [S(11), S(22)])],
    ("P11", "P22"): [Variant("11-22", P["P11"], P["P22"], [S(11, 12), S(21, 22)])],
    ("P22", "P22"): [Variant("22-22", P["P22"], P["P22"], [S(21, 12), S(11, 22)])],
    # width 3
    **{
        ("P111", d): [Variant("111-*", P["P111"], None, rule=_rule_111)]
        for d in ("P111", "P122", "P222", "P223", "P233", "P333")
    },
    **{
        ("P122", d): [
            Variant("122-common", P["P122"], None, rule=_rule_122_swap, cond=_cond_122_common)
        ]
        for d in ("P122", "P222", "P223", "P233", "P333")
    },
    ("P222", "P222"): [Variant("222-222", P["P222"], MT_222, [S(11, 22), S(13, 31), S(32, 23)])],
    ("P222", "P223"): [
        Variant("222-223", P["P222"], MT_223, [S(11, 22), S(13, 12, 31), S(32, 23)])
    ],
    ("P222", "P233"): [
        Variant("222-233", P["P222"], MT_233_M3, [S(11, 13, 22), S(12, 31, 33), S(23, 32)])
    ],
    ("P222", "P333"): [
        Variant("222-333", P["P222"], P333, [S(12, 13, 21), S(11, 32, 33), S(22, 23, 31)])
    ],
    ("P223", "P223"): [
        Variant("223-223a", P["P223"], MT_223, [S(11, 22), S(12, 21, 33), S(23, 32)]),
        Variant("223-223b", P["P223"], MT_223B, [S(12, 13, 21), S(11, 23, 31), S(22, 33)]),
    ],
    ("P223", "P233"): [
        Variant("223-233a", P["P223"], MT_233_M3, [S(12, 13, 21), S(11, 23, 32), S(22, 33)]),
        Variant("223-233b", P["P223"], MT_233_M2, rule=_rule_223_233b,
                cond=lambda ctx: _has_extra_on(ctx, t=ctx.T[0]) is not None),
    ],
    ("P223", "P333"): [
        Variant("223-333", P["P223"], P333, [S(12, 13, 21), S(11, 22, 33), S(23, 31, 32)])
    ],
    ("P233", "P233"): [
        Variant("233-233a", P["P233"], MT_233_M1, [S(11, 22), S(13, 23, 31, 32), S(12, 21, 33)]),
        Variant("233-233b", P["P233"], MT_233_M3T1, rule=_rule_233_233b, cond=_cond_233_233b),
        Variant("233-233b*", P["P233"], MT_233_M3T1, rule=_rule_233_233b),
    ],
    ("P233", "P333"): [
        Variant("233-333", P["P233"], P333, rule=_rule_233_333, cond=_cond_233_333)
    ],
    ("P333", "P333"): [
        Variant("333-333", P333, P333, [S(11, 22, 33), S(12, 23, 31), S(13, 21, 32)])
    ],
}
CASES[("P122", "P122")] = CASES[("P122", "P122")] + [
    Variant("122-122-split", P["P122"], MT_122, [S(11, 12), S(21, 32), S(23, 33)])
]

NO_ENRICH = {"233-333"}


@dataclass
class _Ctx:
    w: int
    L: tuple
    M: tuple
    T: tuple
    E_lm: frozenset
    E_mt: frozenset
    chi: dict
    g0: dict
    extras: list = field(default_factory=list)


def _rank(tag):
    return RANK.get(tag, {"P1": 0, "P11": 0, "P22": 1}.get(tag, 0))


def _perfect_matching(lower, upper, E):
    for perm in permutations(upper):
        if all((a, b) in E for a, b in zip(lower, perm)):
            return dict(zip(lower, perm))
    return None


def _materialize(ctx, template):
    col = []
    ex = {"a": ctx.extras[0][0] if ctx.extras else None,
          "b": ctx.extras[1][0] if len(ctx.extras) > 1 else None}
    for spec in template:
        cs = set()
        for item in spec:
            if isinstance(item, str):
                if ex[item] is None:
                    return None
                cs.add(ex[item])
            elif item[0] == "c":
                cs.add(item[1])
            else:
                j, i = item
                e = (ctx.L[j - 1], ctx.T[i - 1])
                if e not in ctx.g0:
                    return None
                cs.add(ctx.g0[e])
        col.append(cs)
    return col


def _enrich(ctx, col, tag_lm, tag_mt):
    """Spread the two extras over the middle so that a complete retained
    board again has two disjoint doubly-private edges."""
    idx = {m: k for k, m in enumerate(ctx.M)}
    if tag_lm == "P333":
        pm = _perfect_matching(ctx.M, ctx.T, ctx.E_mt)
        back = {t: m for m, t in pm.items()}
        for c, _, t in ctx.extras[:2]:
            col[idx[back[t]]].add(c)
    else:
        pm = _perfect_matching(ctx.L, ctx.M, ctx.E_lm)
        for c, l, _ in ctx.extras[:2]:
            col[idx[pm[l]]].add(c)


def _lm_ok(L, M, E_lm, pattern):
    w = len(L)
    return all(((L[j], M[k]) in E_lm) == ((j, k) in pattern) for j in range(w) for k in range(w))


def _mask(A, B, E):
    w = len(A)
    m = 0
    for j in range(w):
        for k in range(w):
            if (A[j], B[k]) in E:
                m |= 1 << (j * w + k)
    return m


_PLANS = {}


def _plan(w, lm_mask, mt_mask, check):
    """Classification, orientation and every candidate alignment for one
    pair of edge patterns, computed once on positional ids."""
    key = (w, lm_mask, mt_mask)
    plan = _PLANS.get(key)
    if plan is not None:
        return plan
    L, M, T = tuple(range(w)), tuple(range(w, 2 * w)), tuple(range(2 * w, 3 * w))
    E_lm = {(L[j], M[k]) for j in range(w) for k in range(w) if lm_mask >> (j * w + k) & 1}
    E_mt = {(M[j], T[k]) for j in range(w) for k in range(w) if mt_mask >> (j * w + k) & 1}
    tag_lm = classify_edges(L, M, E_lm, check=True).tag
    tag_mt = classify_edges(M, T, E_mt, check=True).tag
    dual = _rank(tag_lm) > _rank(tag_mt)
    if dual:
        L, M, T, _, E_lm, E_mt = _dual(L, M, T, frozenset(), E_lm, E_mt)
        tag_lm, tag_mt = tag_mt, tag_lm
    variants = CASES.get((tag_lm, tag_mt))
    if variants is None:
        raise UnmatchedCase(f"no case for {(tag_lm, tag_mt)}", case=(tag_lm, tag_mt))
    pos = {x: i for lvl in (L, M, T) for i, x in enumerate(lvl)}
    cands = []
    for v in variants:
        for pL in permutations(L):
            for pM in permutations(M):
                if not _lm_ok(pL, pM, E_lm, v.lm):
                    continue
                for pT in permutations(T) if v.mt is not None else [T]:
                    if v.mt is not None and not _lm_ok(pM, pT, E_mt, v.mt):
                        continue
                    cands.append((v, tuple(pos[x] for x in pL), tuple(pos[x] for x in pM),
                                  tuple(pos[x] for x in pT)))
    plan = (dual, tag_lm, tag_mt, cands)
    _PLANS[key] = plan
    return plan


def _dual(L, M, T, E_lt, E_lm, E_mt):
    flip = lambda E: frozenset((b, a) for a, b in E)
    return T, M, L, flip(E_lt), flip(E_mt), flip(E_lm)


def color_middle(L, M, T, E_lt, E_lm, E_mt, chi, check=True, trace=None):
    """Color sets for the middle antichain M; returns dict m -> frozenset.

    ``trace``, if a dict, receives the case name, orientation and whether
    the extras were spread.
    """
    w = len(L)
    if w > 3:
        raise WidthTooLarge(f"no local colorer for width {w}", width=w)
    L, M, T = tuple(L), tuple(M), tuple(T)
    dual, tag_lm, tag_mt, cands = _plan(w, _mask(L, M, E_lm), _mask(M, T, E_mt), check)
    if dual:
        fL, fM, fT, fE, fLM, fMT = _dual(L, M, T, E_lt, E_lm, E_mt)
    else:
        fL, fM, fT = L, M, T
        fE, fLM, fMT = frozenset(E_lt), frozenset(E_lm), frozenset(E_mt)
    g0 = gamma0(fE, chi)
    ex = extras(fL, fT, fE, chi, g0) if (w == 3 and len(fE) == 9) else []
    hits = []
    for v, iL, iM, iT in cands:
        if hits and v is not hits[0][0]:
            break
        ctx = _Ctx(w, tuple(fL[i] for i in iL), tuple(fM[i] for i in iM),
                   tuple(fT[i] for i in iT), fLM, fMT, chi, g0, ex)
        if v.cond is not None and not v.cond(ctx):
            continue
        tmpl = v.rule(ctx) if v.rule is not None else v.sets
        col = None if tmpl is None else _materialize(ctx, tmpl)
        if col is None:
            continue
        hits.append((v, ctx, col))
        if v.name != "122-common" or not log.isEnabledFor(logging.DEBUG):
            break
    if not hits:
        raise UnmatchedCase(f"no alignment for {(tag_lm, tag_mt)}", case=(tag_lm, tag_mt))
    if len(hits) > 1 and (tag_lm, tag_mt) == ("P122", "P122"):
        distinct = {tuple(frozenset(s) for s in _by_id(h[1], h[2], fM)) for h in hits}
        if len(distinct) > 1:
            log.debug("case (122,122): %d distinct alignments, using the first", len(distinct))
    chosen, ctx, col = hits[0]
    enrich = w == 3 and "P333" in (tag_lm, tag_mt) and chosen.name not in NO_ENRICH
    if enrich:
        _enrich(ctx, col, tag_lm, tag_mt)
    if trace is not None:
        trace.update(case=chosen.name, dual=dual, enriched=enrich, tags=(tag_lm, tag_mt))
    result = {m: frozenset(cs) for m, cs in zip(ctx.M, col)}
    if check:
        check_response(L, M, T, E_lm, E_mt, chi, result)
        full = dict(chi)
        full.update(result)
        check_invariant(L, M, E_lm, full, w)
        check_invariant(M, T, E_mt, full, w)
    return result


def _by_id(ctx, col, M):
    d = dict(zip(ctx.M, col))
    return [d[m] for m in M]


# ----------------------------------------------------------------------
# stateful wrapper and player object

@dataclass
class LocalColorState:
    w: int
    palette: frozenset
    L: tuple
    T: tuple
    E: frozenset
    chi: dict
    gamma0: dict = field(default_factory=dict)
    extras: list = field(default_factory=list)

    def refresh(self):
        self.gamma0 = gamma0(self.E, self.chi)
        self.extras = (
            extras(self.L, self.T, self.E, self.chi, self.gamma0)
            if self.w == 3 and len(self.E) == 9
            else []
        )
        return self


def local_start(w, L=None, T=None):
    palette, chi = local_first_round(w, L, T)
    L = tuple(range(w)) if L is None else tuple(L)
    T = tuple(range(w, 2 * w)) if T is None else tuple(T)
    E = frozenset((l, t) for l in L for t in T)
    return LocalColorState(w, palette, L, T, E, chi).refresh()


def local_round(state, move, keep="upper"):
    """Color the middle of ``move`` and move to the retained pair."""
    col = color_middle(state.L, move.middle, state.T, state.E, move.edges_lm, move.edges_mt, state.chi)
    chi = dict(state.chi)
    chi.update(col)
    if keep == "lower":
        L, T, E = state.L, tuple(move.middle), frozenset(move.edges_lm)
    else:
        L, T, E = tuple(move.middle), state.T, frozenset(move.edges_mt)
    chi = {x: chi[x] for x in L + T}
    new = LocalColorState(state.w, state.palette, L, T, E, chi).refresh()
    return new, col


class LocalCoreDisjoint:
    """Player object for the local referee."""

    name = "local-core-disjoint"

    def first_round(self, L, T):
        _, chi = local_first_round(len(L), L, T)
        return chi

    def respond(self, board, move):
        return color_middle(board.L, move.middle, board.T, board.edges, move.edges_lm, move.edges_mt, board.chi)
