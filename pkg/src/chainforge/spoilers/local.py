"""Spoilers and test opponents for the local game.

* ``RandomLocalSpoiler`` plays random legal core pairs, optionally biased
  toward dense ones.
* ``local_private_spoiler_move`` exploits an edge that has lost its private
  color: a matching through that edge leaves the middle point above it with
  nothing to use.
* ``MutantColorer`` is a deliberately short-palette colorer (9 or 10 colors
  at width 3) and ``lcp3_lowerbound_scripts`` is the short script that beats
  it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache

from ..cores import core_edges_small
from ..errors import EdgeHasPrivateColor, LocalColoringFailed, NoPerfectMatching
from ..game import LocalBoard, LocalMove, validate_coloring, validate_move


@lru_cache(maxsize=None)
def cores_on(w):
    """All cores on positions range(w) x range(w), as frozensets of pairs."""
    pos = range(w)
    allp = [(a, b) for a in pos for b in pos]
    res = []
    for bits in range(1, 1 << len(allp)):
        E = frozenset(allp[k] for k in range(len(allp)) if bits >> k & 1)
        try:
            if core_edges_small(tuple(pos), tuple(pos), E) == E:
                res.append(E)
        except NoPerfectMatching:
            pass
    return tuple(res)


def _compose(a, b):
    up = {}
    for m, t in b:
        up.setdefault(m, set()).add(t)
    return {(l, t) for l, m in a for t in up.get(m, ())}


@lru_cache(maxsize=None)
def legal_pairs(w, board_pattern):
    """Core pairs (LM, MT) on positions whose composition stays inside the
    board pattern."""
    cs = cores_on(w)
    return tuple((a, b) for a in cs for b in cs if _compose(a, b) <= board_pattern)


@lru_cache(maxsize=None)
def _weights(pairs, bias):
    return [(len(a) + len(b)) ** bias for a, b in pairs]


def board_pattern(board):
    li = {l: i for i, l in enumerate(board.L)}
    ti = {t: j for j, t in enumerate(board.T)}
    return frozenset((li[l], ti[t]) for l, t in board.edges)


def move_from_positions(board, middle, lm, mt):
    return LocalMove(
        tuple(middle),
        frozenset((board.L[i], middle[k]) for i, k in lm),
        frozenset((middle[k], board.T[j]) for k, j in mt),
    )


class _Fresh:
    def __init__(self, start=1000):
        self.n = start

    def take(self, k):
        out = tuple(range(self.n, self.n + k))
        self.n += k
        return out


class RandomLocalSpoiler:
    name = "random-local"

    def __init__(self, rng=None, keep_dense=0.8, dense_bias=0.0):
        self.rng = rng or random.Random()
        self.keep_dense = keep_dense
        self.dense_bias = dense_bias  # weight pairs by (edge count) ** dense_bias
        self.fresh = _Fresh()

    def first(self, w):
        return self.fresh.take(w), self.fresh.take(w)

    def move(self, board):
        w = board.w
        pairs = legal_pairs(w, board_pattern(board))
        if self.dense_bias:
            a, b = self.rng.choices(pairs, weights=_weights(pairs, self.dense_bias))[0]
        else:
            a, b = self.rng.choice(pairs)
        return move_from_positions(board, self.fresh.take(w), a, b)

    def choose(self, board, move, col):
        lo, hi = len(move.edges_lm), len(move.edges_mt)
        if lo != hi and self.rng.random() < self.keep_dense:
            return "lower" if lo > hi else "upper"
        return self.rng.choice(("lower", "upper"))


def edges_without_private(board):
    return [e for e in sorted(board.edges) if not (board.chi[e[0]] & board.chi[e[1]])]


def local_private_spoiler_move(board, bad_edge, middle):
    """Move after which the middle point between the ends of ``bad_edge`` has
    no legal color.  Raises EdgeHasPrivateColor when the edge still has one."""
    l0, t0 = bad_edge
    if bad_edge not in board.edges:
        raise ValueError(f"{bad_edge} is not a board edge")
    shared = board.chi[l0] & board.chi[t0]
    if shared:
        raise EdgeHasPrivateColor(f"edge {bad_edge} still has private colors", edge=bad_edge, colors=sorted(shared))
    rest_l = [l for l in board.L if l != l0]
    rest_t = [t for t in board.T if t != t0]
    for perm in itertools.permutations(rest_t):
        pairs = [(l0, t0)] + list(zip(rest_l, perm))
        if all(e in board.edges for e in pairs):
            break
    else:
        raise NoPerfectMatching(f"no perfect matching through {bad_edge}")
    middle = tuple(middle)
    return LocalMove(
        middle,
        frozenset((l, m) for (l, _), m in zip(pairs, middle)),
        frozenset((m, t) for (_, t), m in zip(pairs, middle)),
    )


def legal_colors_for(board, move, m):
    """Colors a colorer may put on middle point m in isolation."""
    out = set()
    for c in set().union(*board.chi.values()):
        ls = [l for l in board.L if c in board.chi[l]]
        ts = [t for t in board.T if c in board.chi[t]]
        if ls and ts and all((l, m) in move.edges_lm for l in ls) and all((m, t) in move.edges_mt for t in ts):
            out.add(c)
    return out


# ----------------------------------------------------------------------
# short-palette mutants

@dataclass
class MutantColorer:
    """Width-3 colorer that opens with one private color per edge (color
    3j+i+1 on edge (l_i, t_j)) and, with ten colors, a second one on
    ``extra_edge`` (positions).  Answers by exhaustive search, preferring
    answers that keep every edge of both new boards privately colored."""

    n_colors: int = 9
    extra_edge: tuple = (0, 0)
    name: str = field(default="mutant", init=False)

    def first_round(self, L, T):
        if len(L) != 3 or self.n_colors not in (9, 10):
            raise ValueError("mutants exist for width 3 with 9 or 10 colors")
        chi = {x: set() for x in tuple(L) + tuple(T)}
        for i, j in itertools.product(range(3), range(3)):
            c = 3 * j + i + 1
            chi[L[i]].add(c)
            chi[T[j]].add(c)
        if self.n_colors == 10:
            i, j = self.extra_edge
            chi[L[i]].add(10)
            chi[T[j]].add(10)
        return {x: frozenset(cs) for x, cs in chi.items()}

    def respond(self, board, move):
        col = mutant_search(board, move, prefer_private=True)
        if col is None:
            raise LocalColoringFailed("no legal answer")
        return col


def mutant_search(board, move, prefer_private=True):
    """Exhaustive answer search; returns {m: frozenset} or None."""
    M = move.middle
    opts = {m: legal_colors_for(board, move, m) for m in M}
    colors = sorted(set().union(*opts.values()))
    choices = [[None] + [m for m in M if c in opts[m]] for c in colors]
    need = []  # (m, set of colors that would give edge (x, m) or (m, x) a private color)
    for l, m in move.edges_lm:
        need.append((m, board.chi[l]))
    for m, t in move.edges_mt:
        need.append((m, board.chi[t]))
    fallback = None
    assign = {}

    def ok_partial(k):
        # every requirement can still be met by an undecided color
        undecided = set(colors[k:])
        for m, cs in need:
            if any(assign.get(c) == m for c in cs):
                continue
            if not (cs & undecided & opts[m]):
                return False
        return True

    def rec(k):
        nonlocal fallback
        if k == len(colors):
            col = {m: frozenset(c for c in colors if assign.get(c) == m) for m in M}
            if all(col.values()):
                if fallback is None:
                    fallback = col
                return col if all(any(assign.get(c) == m for c in cs) for m, cs in need) else None
            return None
        for m in choices[k]:
            if m is None:
                assign.pop(colors[k], None)
            else:
                assign[colors[k]] = m
            if prefer_private and not ok_partial(k + 1):
                continue
            r = rec(k + 1)
            if r is not None:
                return r
        assign.pop(colors[k], None)
        return None

    good = rec(0)
    if good is not None:
        return good
    if fallback is None:
        # without the pruning, look for any legal answer
        for pick in itertools.product(*choices):
            col = {m: frozenset(c for c, x in zip(colors, pick) if x == m) for m in M}
            if all(col.values()):
                return col
    return fallback


@dataclass
class ScriptResult:
    verdict: str  # "defeated" or "survived"
    log: list


def lcp3_lowerbound_scripts(alg, ids=None):
    """Two-round script against a width-3 colorer; reports whether the
    colorer was left without a legal answer."""
    fresh = _Fresh() if ids is None else ids
    L, T = fresh.take(3), fresh.take(3)
    chi = {x: frozenset(cs) for x, cs in alg.first_round(L, T).items()}
    board = LocalBoard(L, T, frozenset((l, t) for l in L for t in T), chi)
    log = [board]

    def finish(b):
        bad = edges_without_private(b)
        mv = local_private_spoiler_move(b, bad[0], fresh.take(3))
        log.append(mv)
        try:
            col = alg.respond(b, mv)
            validate_coloring(b, mv, col)
        except Exception as err:  # noqa: BLE001 - any failure to answer counts
            log.append(err)
            return ScriptResult("defeated", log)
        return ScriptResult("survived", log)

    if edges_without_private(board):
        return finish(board)
    rich = [(l, t) for l, t in sorted(board.edges, key=lambda e: (L.index(e[0]), T.index(e[1])))
            if len(chi[l] & chi[t]) >= 2]
    lstar = rich[0][0] if rich else L[0]
    M = fresh.take(3)
    # m3 avoids l*, m1 avoids t3
    lm = frozenset((l, m) for l in L for m in M) - {(lstar, M[2])}
    mt = frozenset((m, t) for m in M for t in T) - {(M[0], T[2])}
    mv = LocalMove(M, lm, mt)
    validate_move(board, mv)
    log.append(mv)
    try:
        col = alg.respond(board, mv)
        validate_coloring(board, mv, col)
    except Exception as err:  # noqa: BLE001
        log.append(err)
        return ScriptResult("defeated", log)
    full = dict(chi)
    full.update({m: frozenset(c) for m, c in col.items()})
    lower = LocalBoard(L, M, lm, {x: full[x] for x in L + M})
    upper = LocalBoard(M, T, mt, {x: full[x] for x in M + T})
    for b in (lower, upper):
        if edges_without_private(b):
            log.append(b)
            return finish(b)
    return ScriptResult("survived", log)
