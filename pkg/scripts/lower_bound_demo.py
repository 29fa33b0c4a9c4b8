#!/usr/bin/env python3
"""Run both lower-bound adversaries and print chains forced per round.

First-Fit against the width-2 group adversary needs one more chain per group;
the interval adversary pins the up-growing algorithm at exactly 2w-1.
"""

import argparse

from chainforge.algorithms.first_fit import FirstFit
from chainforge.algorithms.upgrowing import UpGrowingInterval
from chainforge.game import referee_online
from chainforge.poset import width
from chainforge.spoilers.ff import FFAdversary
from chainforge.spoilers.interval_lb import interval_lb_run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--groups", type=int, default=12)
    ap.add_argument("--max-width", type=int, default=6)
    a = ap.parse_args()

    print("first-fit vs group adversary")
    for m in range(1, a.groups + 1):
        t = referee_online(FirstFit(), FFAdversary(m))
        print(f"  groups={m:3d} points={t.num_points():4d} width={width(t.poset)} chains={t.num_chains()}")

    print("interval adversary (up-growing / first-fit)")
    for w in range(1, a.max_width + 1):
        _, up, sp = interval_lb_run(w, UpGrowingInterval())
        _, ff, _ = interval_lb_run(w, FirstFit())
        print(f"  w={w} points={len(sp.s.rep):4d} upgrowing={up} first-fit={ff} target={2 * w - 1}")


if __name__ == "__main__":
    main()
