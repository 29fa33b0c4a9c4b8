"""Transcripts and referees for on-line chain partitioning and the local game."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Protocol

from .cores import compose_matched_cores, is_core, RegularBipartite
from .errors import (
    AlgorithmIllegalMove,
    ChainforgeError,
    DuplicateId,
    IllegalColoring,
    IllegalMove,
    NotUpGrowing,
    ParseError,
    SpoilerIllegalMove,
    UnknownPredecessor,
)
from .poset import IdSet, Poset, antichain_leq, is_antichain, width


# ----------------------------------------------------------------------
# transcripts

@dataclass(frozen=True)
class Arrive:
    id: int
    preds: tuple
    succs: tuple = ()


@dataclass(frozen=True)
class Assign:
    id: int
    chain: int


@dataclass
class ChainTranscript:
    events: list = field(default_factory=list)

    def arrivals(self):
        return [e for e in self.events if isinstance(e, Arrive)]

    def assignments(self):
        return {e.id: e.chain for e in self.events if isinstance(e, Assign)}

    def num_chains(self):
        return len(set(self.assignments().values()))

    def num_points(self):
        return len(self.arrivals())

    def poset(self):
        p = Poset()
        for e in self.arrivals():
            p.add_point(e.id, e.preds, e.succs)
        return p

    def to_text(self):
        out = []
        for e in self.events:
            if isinstance(e, Arrive):
                toks = ["p", str(e.id)] + [str(q) for q in e.preds]
                if e.succs:
                    toks += ["|"] + [str(q) for q in e.succs]
                out.append(" ".join(toks))
            else:
                out.append(f"c {e.id} {e.chain}")
        return "\n".join(out) + ("\n" if out else "")

    @classmethod
    def from_text(cls, text):
        t = cls()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tok = line.split()
            try:
                if tok[0] == "p" and len(tok) >= 2:
                    rest = tok[2:]
                    if "|" in rest:
                        k = rest.index("|")
                        preds, succs = rest[:k], rest[k + 1:]
                    else:
                        preds, succs = rest, []
                    t.events.append(Arrive(int(tok[1]), tuple(map(int, preds)), tuple(map(int, succs))))
                elif tok[0] == "c" and len(tok) == 3:
                    t.events.append(Assign(int(tok[1]), int(tok[2])))
                else:
                    raise ValueError
            except ValueError:
                raise ParseError(f"line {lineno}: cannot parse {raw!r}", line=lineno) from None
        return t


@dataclass
class Report:
    ok: bool
    points: int = 0
    width: int = 0
    chains: int = 0
    event: Optional[int] = None
    error: str = ""

    def summary(self):
        return f"chains={self.chains} width={self.width} points={self.points}"


def check_transcript(t):
    """Replay a transcript, validating order data and every chain."""
    p = Poset()
    members = {}
    pending = None
    for k, e in enumerate(t.events):
        if isinstance(e, Arrive):
            if pending is not None:
                return Report(False, len(p), event=k, error=f"point {pending} was never assigned")
            try:
                p.add_point(e.id, e.preds, e.succs)
            except ChainforgeError as err:
                return Report(False, len(p), event=k, error=str(err))
            pending = e.id
        else:
            if e.id != pending:
                return Report(False, len(p), event=k, error=f"assignment for {e.id} out of order")
            pending = None
            i = p.index(e.id)
            comp = p._up[i] | p._down[i]
            m = members.get(e.chain, 0)
            if m & ~comp:
                return Report(False, len(p), event=k,
                              error=f"point {e.id} incomparable with chain {e.chain}")
            members[e.chain] = m | (1 << i)
    if pending is not None:
        return Report(False, len(p), event=len(t.events), error=f"point {pending} was never assigned")
    return Report(True, len(p), width(p), len(members))


# ----------------------------------------------------------------------
# on-line referees

class Partitioner(Protocol):
    def assign(self, x, down, up): ...


class PointSource(Protocol):
    def next(self, view): ...


@dataclass
class GameView:
    """What a spoiler may look at: the poset and the public chain indices."""
    poset: Poset
    transcript: ChainTranscript
    chain_of: dict
    last: Optional[int] = None


@dataclass
class RefereeOptions:
    max_points: Optional[int] = None
    upgrowing: bool = False
    on_step: Optional[object] = None  # callback(view) after each assignment


def _normalize(mv):
    if mv is None:
        return None
    if isinstance(mv, Arrive):
        return mv
    x, preds, *rest = mv
    succs = tuple(rest[0]) if rest else ()
    return Arrive(x, tuple(preds), succs)


def referee_online(alg, spoiler, opts=None):
    """Run a game; returns the transcript (with ``poset`` attached)."""
    opts = opts or RefereeOptions()
    p = Poset()
    t = ChainTranscript()
    chain_of = {}
    dense = {}
    members = {}
    view = GameView(p, t, chain_of)
    while opts.max_points is None or len(p) < opts.max_points:
        mv = _normalize(spoiler.next(view))
        if mv is None:
            break
        if not isinstance(mv.id, int) or mv.id < 0:
            raise SpoilerIllegalMove(f"bad point id {mv.id!r}", id=mv.id, transcript=t)
        if opts.upgrowing and mv.succs:
            raise NotUpGrowing(f"point {mv.id} is not maximal", id=mv.id, transcript=t)
        try:
            p.add_point(mv.id, mv.preds, mv.succs)
        except (DuplicateId, UnknownPredecessor) as err:
            raise SpoilerIllegalMove(str(err), id=mv.id, transcript=t) from err
        except SpoilerIllegalMove as err:
            err.transcript = t
            raise
        t.events.append(mv)
        i = p.index(mv.id)
        label = alg.assign(mv.id, IdSet(p, p._down[i]), IdSet(p, p._up[i]))
        if label not in dense:
            dense[label] = len(dense) + 1
        c = dense[label]
        m = members.get(c, 0)
        if m & ~(p._up[i] | p._down[i]):
            raise AlgorithmIllegalMove(
                f"point {mv.id} put on chain {c} with an incomparable point",
                id=mv.id, chain=c, transcript=t,
            )
        members[c] = m | (1 << i)
        chain_of[mv.id] = c
        t.events.append(Assign(mv.id, c))
        view.last = mv.id
        if opts.on_step is not None:
            opts.on_step(view)
    t.poset = p
    return t


def referee_upgrowing(alg, spoiler, opts=None):
    opts = opts or RefereeOptions()
    opts.upgrowing = True
    return referee_online(alg, spoiler, opts)


def chains_used(t):
    return t.num_chains()


# ----------------------------------------------------------------------
# local game

@dataclass(frozen=True)
class LocalBoard:
    L: tuple
    T: tuple
    edges: frozenset
    chi: dict

    @property
    def w(self):
        return len(self.L)

    def private(self, l, t):
        return self.chi[l] & self.chi[t]


@dataclass(frozen=True)
class LocalMove:
    middle: tuple
    edges_lm: frozenset
    edges_mt: frozenset


def _three_level_poset(L, M, T, E_lt, E_lm, E_mt):
    p = Poset()
    for x in L:
        p.add_point(x)
    for m in M:
        p.add_point(m, [l for l in L if (l, m) in E_lm])
    for t in T:
        p.add_point(t, [l for l in L if (l, t) in E_lt] + [m for m in M if (m, t) in E_mt])
    return p


def validate_move(board, move, used_ids=()):
    L, T, M = board.L, board.T, tuple(move.middle)
    w = len(L)
    if len(M) != w or len(set(M)) != w:
        raise SpoilerIllegalMove(f"middle level must have {w} distinct points", clause="size")
    if set(M) & (set(L) | set(T) | set(used_ids)):
        raise SpoilerIllegalMove("middle points must be fresh", clause="fresh")
    if not set(move.edges_lm) <= {(l, m) for l in L for m in M}:
        raise SpoilerIllegalMove("lower edges outside L x M", clause="edges")
    if not set(move.edges_mt) <= {(m, t) for m in M for t in T}:
        raise SpoilerIllegalMove("upper edges outside M x T", clause="edges")
    lm = RegularBipartite(L, M, move.edges_lm)
    mt = RegularBipartite(M, T, move.edges_mt)
    if not is_core(lm) or not is_core(mt):
        raise SpoilerIllegalMove("(L,M) and (M,T) must be cores", clause="core")
    if not compose_matched_cores(lm, mt).edges <= board.edges:
        raise SpoilerIllegalMove("move adds relations between L and T", clause="transitivity")
    p = _three_level_poset(L, M, T, board.edges, move.edges_lm, move.edges_mt)
    if width(p) != w:
        raise SpoilerIllegalMove("width of L, M, T exceeds w", clause="width")
    for A in (L, M, T):
        if not is_antichain(p, A):
            raise SpoilerIllegalMove("levels must be antichains", clause="antichain")
    if not (antichain_leq(p, L, M) and antichain_leq(p, M, T)):
        raise SpoilerIllegalMove("levels are not ordered L, M, T", clause="order")
    return p


def validate_coloring(board, move, col):
    chi = board.chi
    shared = set().union(*(chi[l] for l in board.L)) & set().union(*(chi[t] for t in board.T))
    seen = set()
    for m in move.middle:
        cs = col.get(m) if col else None
        if not cs:
            raise IllegalColoring(f"point {m} got no color", clause="nonempty", point=m)
        if not set(cs) <= shared:
            raise IllegalColoring(f"point {m} uses a color outside chi(L)&chi(T)", clause="palette", point=m)
        if set(cs) & seen:
            raise IllegalColoring("two middle points share a color", clause="chain", point=m)
        seen |= set(cs)
        for c in cs:
            for l in board.L:
                if c in chi[l] and (l, m) not in move.edges_lm:
                    raise IllegalColoring(f"color {c} puts {l} and {m} on one chain", clause="chain")
            for t in board.T:
                if c in chi[t] and (m, t) not in move.edges_mt:
                    raise IllegalColoring(f"color {c} puts {m} and {t} on one chain", clause="chain")


def validate_board(board):
    for c in set().union(*board.chi.values()) if board.chi else ():
        ls = [l for l in board.L if c in board.chi[l]]
        ts = [t for t in board.T if c in board.chi[t]]
        if len(ls) > 1 or len(ts) > 1 or (ls and ts and (ls[0], ts[0]) not in board.edges):
            raise IllegalColoring(f"color {c} is not a chain", clause="chain", color=c)
    for x in board.L + board.T:
        if not board.chi.get(x):
            raise IllegalColoring(f"point {x} has no color", clause="nonempty", point=x)


@dataclass
class LocalGameLog:
    boards: list
    palette: frozenset
    moves: list = field(default_factory=list)
    colorings: list = field(default_factory=list)


def referee_local(alg, spoiler, w, rounds):
    """Play ``rounds`` rounds after the opening; returns the retained boards.

    Raises IllegalMove (spoiler side) or IllegalColoring (colorer side).
    """
    if w < 1:
        raise ValueError("w must be positive")
    L, T = spoiler.first(w)
    L, T = tuple(L), tuple(T)
    chi = alg.first_round(L, T)
    board = LocalBoard(L, T, frozenset((l, t) for l in L for t in T), {x: frozenset(chi[x]) for x in L + T})
    validate_board(board)
    palette = frozenset().union(*board.chi.values())
    log = LocalGameLog([board], palette)
    used = set(L) | set(T)
    for _ in range(rounds):
        move = spoiler.move(board)
        if move is None:
            break
        validate_move(board, move, used)
        used |= set(move.middle)
        try:
            col = alg.respond(board, move)
        except ChainforgeError as err:
            raise IllegalColoring(f"colorer failed to answer: {err}", clause="no-answer") from err
        validate_coloring(board, move, col)
        full = dict(board.chi)
        full.update({m: frozenset(c) for m, c in col.items()})
        keep = spoiler.choose(board, move, col)
        if keep == "lower":
            nb = LocalBoard(board.L, tuple(move.middle), frozenset(move.edges_lm),
                            {x: full[x] for x in board.L + tuple(move.middle)})
        elif keep == "upper":
            nb = LocalBoard(tuple(move.middle), board.T, frozenset(move.edges_mt),
                            {x: full[x] for x in tuple(move.middle) + board.T})
        else:
            raise SpoilerIllegalMove(f"unknown choice {keep!r}", clause="choice")
        log.moves.append(move)
        log.colorings.append(col)
        board = nb
        log.boards.append(board)
    return log


__all__ = [
    "Arrive", "Assign", "ChainTranscript", "Report", "check_transcript",
    "GameView", "RefereeOptions", "referee_online", "referee_upgrowing",
    "LocalBoard", "LocalMove", "validate_move", "validate_coloring", "validate_board",
    "referee_local", "LocalGameLog", "IllegalMove",
]
