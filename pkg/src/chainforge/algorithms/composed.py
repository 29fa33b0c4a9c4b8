"""Global on-line partitioner for width <= 3 built from local colorers.

For every width level v the state keeps a set P_v of width v (nested in v),
a chain of maximum antichains of P_v from the bottom sentinels to the top
sentinels, and a multicoloring of the points of P_v over a private palette.
A new point x joins the levels from i0 upward, where i0 is the lowest level
that can absorb x without raising its width; a fresh antichain through x is
wedged into level i0 and colored by one round of the local game there.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field

from ..bits import LevelMatcher, iter_bits
from ..errors import LocalColoringFailed, WidthTooLarge
from ..poset import Poset, _lexmin_antichain_mask
from .local import color_middle, local_first_round
from .reduction import dcore, inflate_levels

PALETTE_SIZES = {1: 1, 2: 4, 3: 11}
MAX_WIDTH = 3


@dataclass
class ReductionState:
    poset: Poset = field(default_factory=Poset)
    w: int = 0
    bottoms: list = field(default_factory=list)
    tops: list = field(default_factory=list)
    levels: list = field(default_factory=list)  # LevelMatcher for P_1..P_w
    chains: list = field(default_factory=list)  # per level: list of antichain bitmasks
    chi: list = field(default_factory=list)  # per level: index -> frozenset of colors
    chibar: list = field(default_factory=list)  # per level: (antichain mask, index) -> colors
    color_masks: list = field(default_factory=list)  # per level: color -> bitmask
    union: list = field(default_factory=list)  # per level: union of its antichains
    coloring: dict = field(default_factory=dict)  # id -> global color
    real: int = 0  # bitmask of presented points

    def P(self, i):
        return 0 if i == 0 else self.levels[i - 1].R


def _offset(v):
    return sum(PALETTE_SIZES[u] for u in range(1, v))


class ComposedPartitioner:
    name = "composed-w3"

    def __init__(self, max_width=MAX_WIDTH, check=True):
        self.s = ReductionState()
        self.max_width = max_width
        self.check = check
        self._sentinel = 0
        self.last_trace = {}

    # ------------------------------------------------------------------
    def assign(self, x, down, up=()):
        s = self.s
        p = s.poset
        d = 0
        for y in down:
            i = p.index(y)
            d |= p._down[i] | (1 << i)
        u = 0
        for y in up:
            i = p.index(y)
            u |= p._up[i] | (1 << i)
        d |= p.mask(s.bottoms)
        u |= p.mask(s.tops)
        p._insert(x, d, u)
        xi = p.index(x)
        if s.w == 0 or s.levels[-1].probe(xi, p._up, p._down) is None:
            self._bump(xi)
        s.real |= 1 << xi
        return self._place(x, xi)

    def _new_sentinel(self):
        self._sentinel -= 1
        return self._sentinel

    def _bump(self, xi):
        s = self.s
        p = s.poset
        v = s.w + 1
        if v > self.max_width:
            raise WidthTooLarge(f"width {v} exceeds {self.max_width}", width=v)
        old_real = s.real
        b = self._new_sentinel()
        t = self._new_sentinel()
        real_all = old_real | (1 << xi)
        p._insert(b, 0, real_all | p.mask(s.tops))
        p._insert(t, real_all | p.mask(s.bottoms) | (1 << p.index(b)), 0)
        s.bottoms.append(b)
        s.tops.append(t)
        bot = p.mask(s.bottoms)
        top = p.mask(s.tops)
        s.levels.append(LevelMatcher(p._up, old_real | bot | top))
        s.w = v
        _, chi0 = local_first_round(v, s.bottoms, s.tops, offset=_offset(v))
        chi = {p.index(z): cs for z, cs in chi0.items()}
        s.chi.append(dict(chi))
        s.chains.append([bot, top])
        s.chibar.append({(bot if k in iter_bits(bot) else top, k): cs for k, cs in chi.items()})
        cm = {}
        for k, cs in chi.items():
            for c in cs:
                cm[c] = cm.get(c, 0) | (1 << k)
        s.color_masks.append(cm)
        s.union.append(bot | top)

    # ------------------------------------------------------------------
    def _place(self, x, xi):
        s = self.s
        p = s.poset
        # lowest level from which every level absorbs x without a width jump
        probes = {}
        i0 = 1
        for j in range(s.w, 0, -1):
            pr = s.levels[j - 1].probe(xi, p._up, p._down)
            if pr is None:
                i0 = j + 1
                break
            probes[j] = pr
        for j in range(i0, s.w + 1):
            s.levels[j - 1].commit(xi, probes[j])
        xb = 1 << xi
        comp = p._up[xi] | p._down[xi]
        # a maximum antichain of P_{i0-1} + x; all of them contain x
        base = s.P(i0 - 1)
        A0 = xb | _lexmin_antichain_mask(p, base & ~comp, i0 - 1)
        chain = s.chains[i0 - 1]
        dx, ux = p._down[xi], p._up[xi]
        # A_d: last antichain with a point below x; A_u: first with a point above
        k = bisect_left(range(len(chain)), True, key=lambda k: not (chain[k] & dx))
        kd = k - 1
        ku = bisect_left(range(len(chain)), True, key=lambda k: bool(chain[k] & ux))
        Ad, Au = chain[kd], chain[ku]
        if ku != kd + 1:
            raise LocalColoringFailed("bracketing antichains are not consecutive", level=i0)
        Ax = self._minimal(self._maximal(A0 | Ad) | Au)
        if not (Ax & xb):
            raise LocalColoringFailed("new antichain misses the new point", level=i0)
        chain.insert(ku, Ax)
        s.union[i0 - 1] |= Ax
        self._color(i0, Ad, Ax, Au)
        chi_x = s.chi[i0 - 1][xi]
        color = min(chi_x)
        s.coloring[x] = color
        self.last_trace = dict(self._trace, i0=i0)
        if self.check:
            self._check_step(i0, Ad, Ax, Au, xi)
        return color

    def _maximal(self, m):
        up = self.s.poset._up
        return sum(1 << i for i in iter_bits(m) if not (up[i] & m))

    def _minimal(self, m):
        down = self.s.poset._down
        return sum(1 << i for i in iter_bits(m) if not (down[i] & m))

    def _color(self, i0, Ad, Ax, Au):
        s = self.s
        p = s.poset
        L, M, T = list(iter_bits(Ad)), list(iter_bits(Ax)), list(iter_bits(Au))
        up = p._up

        def leq(a, b):
            return a == b or bool(up[a] >> b & 1)

        Lb, Mb, Tb, edges = inflate_levels(L, M, T, leq)
        core = dcore(Lb, Mb, Tb, edges)
        cb = s.chibar[i0 - 1]
        chi_board = {("L", a): cb[(Ad, a)] for a in L}
        chi_board.update({("T", t): cb[(Au, t)] for t in T})
        self._trace = {}
        col = color_middle(Lb, Mb, Tb, core["lt"], core["lm"], core["mt"], chi_board,
                           check=self.check, trace=self._trace)
        chi = s.chi[i0 - 1]
        cm = s.color_masks[i0 - 1]
        for m in M:
            cs = col[("M", m)]
            cb[(Ax, m)] = cs
            if m in chi:
                if self.check and not cs <= chi[m]:
                    raise LocalColoringFailed("inflated copy outgrew its point", point=m)
                continue
            chi[m] = cs
            for c in cs:
                other = cm.get(c, 0)
                if other & ~(p._up[m] | p._down[m]):
                    raise LocalColoringFailed(f"color {c} is no longer a chain", color=c)
                cm[c] = other | (1 << m)

    # ------------------------------------------------------------------
    def _check_step(self, i0, Ad, Ax, Au, xi):
        s = self.s
        p = s.poset
        prev = 0
        for i in range(1, s.w + 1):
            lv = s.levels[i - 1]
            if lv.width != i:
                raise LocalColoringFailed(f"width of P_{i} drifted to {lv.width}", level=i)
            if prev & ~lv.R:
                raise LocalColoringFailed(f"P_{i-1} not inside P_{i}", level=i)
            if lv.R != prev | s.union[i - 1]:
                raise LocalColoringFailed(f"P_{i} is not P_{i-1} plus its antichains", level=i)
            prev = lv.R
        if lv.R != s.real | p.mask(s.bottoms) | p.mask(s.tops):
            raise LocalColoringFailed("top level is not the whole poset")
        for A in (Ad, Ax, Au):
            if A.bit_count() != i0 or any(p._up[a] & A for a in iter_bits(A)):
                raise LocalColoringFailed("level antichain has the wrong shape", level=i0)
        for lo, hi in ((Ad, Ax), (Ax, Au)):
            if lo == hi or any(not ((p._up[a] | (1 << a)) & hi) for a in iter_bits(lo)):
                raise LocalColoringFailed("antichains out of order", level=i0)
        if s.coloring[p._ids[xi]] not in s.chi[i0 - 1][xi]:
            raise LocalColoringFailed("emitted chain not among the point's colors")

    def full_check(self):
        """Expensive invariant audit against the poset oracles."""
        from ..poset import width as pwidth

        s = self.s
        p = s.poset
        for i in range(1, s.w + 1):
            R = s.P(i)
            if pwidth(p, p.ids(R)) != i:
                raise LocalColoringFailed(f"width(P_{i}) != {i}")
            chain = s.chains[i - 1]
            if chain[0] != R & p.mask(s.bottoms) or chain[-1] != R & p.mask(s.tops):
                raise LocalColoringFailed(f"level {i} chain has wrong extremes")
            for a, b in zip(chain, chain[1:]):
                if any(not ((p._up[q] | (1 << q)) & b) for q in iter_bits(a)):
                    raise LocalColoringFailed(f"level {i} chain not ordered")
            for A in chain:
                if A.bit_count() != i:
                    raise LocalColoringFailed(f"level {i} antichain of wrong size")
            chi = s.chi[i - 1]
            if set(chi) != set(iter_bits(s.union[i - 1])):
                raise LocalColoringFailed(f"level {i} coloring does not match its antichains")
            for (A, q), cs in s.chibar[i - 1].items():
                if not cs <= chi[q]:
                    raise LocalColoringFailed("inflated copy outgrew its point")
        for x, c in s.coloring.items():
            if not any(c in s.chi[i - 1].get(p.index(x), ()) for i in range(1, s.w + 1)):
                raise LocalColoringFailed(f"point {x} has a color from no level")


def composed_partitioner_step(alg, x, down, up=()):
    """Functional form over a ComposedPartitioner; returns (state, chain)."""
    c = alg.assign(x, down, up)
    return alg.s, c
