"""``chainforge`` command line: play, check, gen, bench.

Exit codes: 0 ok, 1 validation failure, 2 illegal game move, 64 usage.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from statistics import mean

from . import config as C
from .errors import ChainforgeError, IllegalMove, ParseError
from .game import ChainTranscript, Arrive, check_transcript, referee_local, referee_online, referee_upgrowing
from .generators import SequenceSource, random_poset, random_upgrowing_interval, random_width_w
from .interval import IntervalRep
from .poset import width as poset_width
from .spoilers.ff import FFAdversary
from .spoilers.interval_lb import IntervalLBSpoiler
from .spoilers.local import RandomLocalSpoiler, lcp3_lowerbound_scripts

EXIT_OK, EXIT_INVALID, EXIT_ILLEGAL, EXIT_USAGE = 0, 1, 2, 64

log = logging.getLogger("chainforge")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _setup_logging():
    level = os.environ.get("CHAINFORGE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# ----------------------------------------------------------------------
# input files

def read_arrivals(text):
    """Arrivals from either a point file ("p" lines) or an interval file ("i" lines)."""
    first = next((ln.split()[0] for ln in text.splitlines() if ln.split() and not ln.lstrip().startswith("#")), None)
    if first == "i":
        rep = IntervalRep.from_text(text)
        ev = []
        seen = []
        for x in rep:  # file order is arrival order
            ev.append(Arrive(x, tuple(y for y in seen if rep.less(y, x)),
                             tuple(y for y in seen if rep.less(x, y))))
            seen.append(x)
        return ev
    return ChainTranscript.from_text(text).arrivals()


def make_source(cfg):
    base, arg = C.split_name(cfg.spoiler)
    if base == "ff-adversary":
        return FFAdversary(cfg.groups), False
    if base == "interval-lb":
        return IntervalLBSpoiler(int(arg)), True
    if base == "random":
        return SequenceSource(random_width_w(cfg.n, cfg.width, cfg.rng())), False
    if base == "random-upgrowing":
        ev, _ = random_upgrowing_interval(cfg.n, cfg.width, cfg.rng())
        return SequenceSource(ev), True
    if base == "replay":
        with open(arg) as fh:
            return SequenceSource(read_arrivals(fh.read())), False
    raise C.UsageError(f"unknown spoiler {cfg.spoiler!r}")


# ----------------------------------------------------------------------
# commands

def cmd_play(cfg):
    cfg.validate()
    if cfg.alg in C.LOCAL_COLORERS:
        return _play_local(cfg)
    alg = C.ALGORITHMS[cfg.alg]()
    src, upgrowing = make_source(cfg)
    try:
        t = (referee_upgrowing if upgrowing else referee_online)(alg, src)
    except IllegalMove as err:
        tr = getattr(err, "transcript", None)
        if tr is not None and cfg.out:
            _write(cfg.out, tr.to_text())
        print(f"illegal move: {err}", file=sys.stderr)
        return EXIT_ILLEGAL
    if cfg.out:
        _write(cfg.out, t.to_text())
    print(f"chains={t.num_chains()} width={poset_width(t.poset)} points={t.num_points()}")
    return EXIT_OK


def _play_local(cfg):
    alg = C.LOCAL_COLORERS[cfg.alg]()
    base, _ = C.split_name(cfg.spoiler)
    if base == "lcp3-scripts":
        r = lcp3_lowerbound_scripts(alg)
        print(f"verdict={r.verdict}")
        return EXIT_OK
    try:
        lg = referee_local(alg, RandomLocalSpoiler(cfg.rng()), cfg.width, cfg.n)
    except IllegalMove as err:
        print(f"illegal move: {err}", file=sys.stderr)
        return EXIT_ILLEGAL
    print(f"rounds={len(lg.moves)} palette={len(lg.palette)} width={cfg.width}")
    return EXIT_OK


def cmd_check(path):
    try:
        with open(path) as fh:
            t = ChainTranscript.from_text(fh.read())
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_INVALID
    rep = check_transcript(t)
    if not rep.ok:
        print(f"invalid at event {rep.event}: {rep.error}")
        return EXIT_INVALID
    print(rep.summary())
    return EXIT_OK


def gen_text(g):
    g.validate()
    rng = C.random.Random(g.seed)
    if g.kind == "random-poset":
        return random_poset(g.n, g.density, rng).to_text()
    if g.kind == "random-width-w":
        return ChainTranscript(list(random_width_w(g.n, g.width, rng))).to_text()
    _, rep = random_upgrowing_interval(g.n, g.width, rng)
    return rep.to_text(order=list(rep))


def cmd_gen(g):
    _write(g.out, gen_text(g))
    return EXIT_OK


def bench_rows(b):
    """Rows (width, algorithm, max_chains, mean_chains, bound, verdict)."""
    b.validate()
    rows = []
    for w in b.widths:
        res = []
        for k in range(b.trials):
            ev, _ = random_upgrowing_interval(b.n, w, C.trial_rng(b.seed, "ugi", w, k))
            t = referee_upgrowing(C.ALGORITHMS["upgrowing-interval"](), SequenceSource(ev))
            res.append(t.num_chains())
        bound = 2 * w - 1
        rows.append((w, "upgrowing-interval", max(res), mean(res), bound, "ok" if max(res) <= bound else "FAIL"))
    for w in [v for v in b.widths if v <= 3]:
        res = []
        for k in range(b.trials):
            ev = random_width_w(b.n, w, C.trial_rng(b.seed, "cw3", w, k))
            t = referee_online(C.ALGORITHMS["composed-w3"](check=False), SequenceSource(ev))
            res.append(t.num_chains())
        bound = {1: 1, 2: 5, 3: 16}[w]
        rows.append((w, "composed-w3", max(res), mean(res), bound, "ok" if max(res) <= bound else "FAIL"))
    t = referee_online(C.ALGORITHMS["first-fit"](), FFAdversary(b.groups))
    c = t.num_chains()
    rows.append((2, f"first-fit/ff-adversary:{b.groups}", c, c, f">={b.groups}", "ok" if c >= b.groups else "FAIL"))
    return rows


def format_table(rows):
    head = ("width", "algorithm", "max_chains", "mean_chains", "bound", "verdict")
    body = [(str(w), a, str(mx), f"{mn:.2f}", str(bd), v) for w, a, mx, mn, bd, v in rows]
    widths = [max(len(r[i]) for r in [head] + body) for i in range(len(head))]
    return "".join("  ".join(c.ljust(k) for c, k in zip(r, widths)).rstrip() + "\n" for r in [head] + body)


def cmd_bench(b):
    rows = bench_rows(b)
    sys.stdout.write(format_table(rows))
    return EXIT_OK if all(r[-1] == "ok" for r in rows) else EXIT_INVALID


# ----------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="chainforge", description="On-line chain partitioning games.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    pl = sub.add_parser("play", help="run a game and print a summary line")
    pl.add_argument("--alg", default="first-fit",
                    help=f"one of {', '.join(list(C.ALGORITHMS) + list(C.LOCAL_COLORERS))}")
    pl.add_argument("--spoiler", default="random",
                    help="ff-adversary, interval-lb:<w>, random, random-upgrowing, replay:<path>, "
                         "lcp3-scripts, random-local")
    pl.add_argument("--width", type=int, default=3)
    pl.add_argument("-n", type=int, default=100, help="points (or local rounds)")
    pl.add_argument("--groups", type=int, default=6)
    pl.add_argument("--seed", type=int, default=0)
    pl.add_argument("--out")

    ck = sub.add_parser("check", help="validate a transcript file")
    ck.add_argument("path")

    gn = sub.add_parser("gen", help="write a random input file")
    gn.add_argument("kind", choices=C.GEN_KINDS)
    gn.add_argument("-n", type=int, default=20)
    gn.add_argument("--width", type=int, default=3)
    gn.add_argument("--density", type=float, default=0.35)
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--out")

    bn = sub.add_parser("bench", help="chains used versus the proven bounds")
    bn.add_argument("--widths", default="2,3,4,5")
    bn.add_argument("-n", type=int, default=300)
    bn.add_argument("--trials", type=int, default=50)
    bn.add_argument("--groups", type=int, default=20)
    bn.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None):
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "play":
            return cmd_play(C.RunConfig(args.alg, args.spoiler, args.width, args.n, args.seed, args.out, args.groups))
        if args.cmd == "check":
            return cmd_check(args.path)
        if args.cmd == "gen":
            return cmd_gen(C.GenConfig(args.kind, args.n, args.width, args.seed, args.density, args.out))
        try:
            widths = tuple(int(x) for x in args.widths.split(",") if x)
        except ValueError:
            raise C.UsageError("--widths takes a comma-separated list of integers") from None
        return cmd_bench(C.BenchConfig(widths, args.n, args.trials, args.seed, args.groups))
    except C.UsageError as err:
        print(f"chainforge: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"chainforge: {err}", file=sys.stderr)
        return EXIT_INVALID
    except ChainforgeError as err:
        print(f"chainforge: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
