#!/usr/bin/env python3
"""Local game: opening palettes, a random walk, and the short-palette script."""

import argparse
import random

from chainforge.algorithms.local import LocalCoreDisjoint, check_invariant, local_first_round
from chainforge.game import referee_local
from chainforge.spoilers.local import MutantColorer, RandomLocalSpoiler, lcp3_lowerbound_scripts


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rounds", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()

    for w in (1, 2, 3):
        pal, _ = local_first_round(w)
        lg = referee_local(LocalCoreDisjoint(), RandomLocalSpoiler(random.Random(a.seed), dense_bias=4.0), w, a.rounds)
        for b in lg.boards:
            check_invariant(b.L, b.T, b.edges, b.chi, w)
        used = frozenset().union(*(frozenset().union(*b.chi.values()) for b in lg.boards))
        print(f"w={w} palette={len(pal)} rounds={len(lg.moves)} colors seen={len(used)}")

    for name, alg in [("mutant-9", MutantColorer(9)), ("mutant-10", MutantColorer(10, (0, 2))),
                      ("local-core-disjoint", LocalCoreDisjoint())]:
        print(f"{name}: {lcp3_lowerbound_scripts(alg).verdict}")


if __name__ == "__main__":
    main()
