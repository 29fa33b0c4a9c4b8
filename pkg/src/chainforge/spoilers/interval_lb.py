"""Adversary forcing 2w-1 chains on up-growing interval orders of width w.

S(v, M) builds, above an antichain M of maximal points, a set Q of width v on
which the algorithm has used at least 2v-2 chains.  It recurses twice at
v-1 (the second time over the maximal points A of the first answer), then
adds one point x above the part N of M whose chains the answers reused, or
above all of M when that part is small.

Every point is placed through an explicit interval representation: right
endpoints are first slid within their gaps between left endpoints so that
the intended down-set ends strictly before the rest, and the new interval
starts in between.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction

from ..errors import AlgorithmCheated, NotIntervalOrder
from ..game import Arrive
from ..interval import IntervalRep, rearrange_right_endpoints
from ..poset import maximal, minimal, width


class IntervalSpoilerState:
    def __init__(self):
        self.rep = IntervalRep()
        self.next_id = 0
        self.frames = []  # (v, M, Q) of finished calls, for inspection


class IntervalLBSpoiler:
    """PointSource; reads chain indices from the public view only."""

    name = "interval-lb"

    def __init__(self, w, check=True):
        self.w = w
        self.check = check
        self.s = IntervalSpoilerState()
        self.view = None
        self._gen = None

    # PointSource protocol ---------------------------------------------
    def next(self, view):
        self.view = view
        if self._gen is None:
            self._gen = self._play()
            try:
                return next(self._gen)
            except StopIteration:
                return None
        try:
            return self._gen.send(None)
        except StopIteration:
            return None

    # helpers ------------------------------------------------------------
    @property
    def poset(self):
        return self.view.poset

    def chain(self, x):
        try:
            return self.view.chain_of[x]
        except KeyError:
            raise AlgorithmCheated(f"point {x} has no chain", id=x) from None

    def _closed_down(self, xs):
        p = self.poset
        out = set(xs)
        for x in xs:
            out |= p.down(x)
        return out

    def _present(self, D):
        """Yield one arrival whose down-set is exactly the closed set D."""
        rep = self.s.rep
        x = self.s.next_id
        self.s.next_id += 1
        if rep:
            lefts = sorted({l for l, _ in rep.values()})
            gaps = {}
            for y, (_, r) in rep.items():
                gaps.setdefault(bisect_right(lefts, r), []).append(y)
            targets = {}
            for g, ys in gaps.items():
                lo = lefts[g - 1]
                hi = lefts[g] if g < len(lefts) else lo + 2
                ys.sort(key=lambda y: (y not in D, rep[y][1], y))
                for k, y in enumerate(ys):
                    targets[y] = lo + (hi - lo) * Fraction(k + 1, len(ys) + 1)
            rep = rearrange_right_endpoints(rep, targets)
            inD = [rep[y][1] for y in rep if y in D]
            out = [rep[y][1] for y in rep if y not in D]
            if inD and out and max(inD) >= min(out):
                raise NotIntervalOrder("requested down-set is not realizable", down=sorted(D))
            if inD and out:
                l = (max(inD) + min(out)) / 2
            elif inD:
                l = max(inD) + 1
            else:
                l = min(out)
            r = max([l] + lefts) + 1
        else:
            l, r = Fraction(0), Fraction(1)
        rep[x] = (l, r)
        self.s.rep = rep
        if self.check:
            got = {y for y in rep if y != x and rep.less(y, x)}
            assert got == set(D), "representation disagrees with the intended down-set"
        preds = tuple(sorted(maximal(self.poset, D))) if D else ()
        yield Arrive(x, preds)
        return x

    # strategy -----------------------------------------------------------
    def _play(self):
        M = []
        for _ in range(self.w):
            x = yield from self._present(set())
            M.append(x)
        if self.w >= 2:
            yield from self._S(self.w, M)

    def _S(self, v, M):
        p = self.poset
        if v == 2:
            x = yield from self._present(self._closed_down(M))
            cx = self.chain(x)
            hit = [m for m in M if self.chain(m) == cx]
            if hit:
                y = yield from self._present(self._closed_down(hit[:1]))
            else:
                y = yield from self._present(self._closed_down(M))
            Q = {x, y}
        else:
            Q1 = yield from self._S(v - 1, M)
            A = sorted(maximal(p, Q1))
            Q2 = yield from self._S(v - 1, A)
            used = {self.chain(q) for q in Q1 | Q2}
            N = [m for m in M if self.chain(m) in used]
            if len(N) >= v - 1:
                x = yield from self._present(self._closed_down(N))
            else:
                x = yield from self._present(self._closed_down(M))
            Q = Q1 | Q2 | {x}
        if self.check:
            self._check_frame(v, M, Q)
        self.s.frames.append((v, tuple(M), frozenset(Q)))
        return Q

    def _check_frame(self, v, M, Q):
        p = self.poset
        assert width(p, Q) == v, f"width(Q) != {v}"
        assert len(maximal(p, Q)) == v, "Q does not have v maximal points"
        assert width(p, set(M) | Q) == len(M), "M together with Q is too wide"
        chQ = {self.chain(q) for q in Q}
        chM = {self.chain(m) for m in M}
        assert len(chQ) >= 2 * v - 2, f"only {len(chQ)} chains used in Q"
        assert len(chQ - chM) >= v - 1, "too few chains of Q avoid M"
        assert any(all(p.less(m, q) for m in M) for q in minimal(p, Q)), "no minimal q above M"
        covered = [m for m in M if self.chain(m) in chQ]
        free = [m for m in M if self.chain(m) not in chQ]
        ups = {m: p.up(m) for m in M}
        for a in free:
            for b in free:
                assert ups[a] == ups[b], "uncovered points of M cannot share a right endpoint"
            for c in covered:
                assert ups[a] <= ups[c], "a covered point of M cannot end before the uncovered ones"


def interval_lb_run(w, alg, check=True):
    """Play the adversary against ``alg``; returns (transcript, chains, spoiler)."""
    from ..game import referee_upgrowing

    sp = IntervalLBSpoiler(w, check=check)
    t = referee_upgrowing(alg, sp)
    return t, t.num_chains(), sp
