#!/usr/bin/env python3
"""Chains used versus the proven bounds; same table as ``chainforge bench``."""

import argparse
import sys

from chainforge.cli import bench_rows, format_table
from chainforge.config import BenchConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--widths", default="2,3,4,5")
    ap.add_argument("-n", type=int, default=300)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--groups", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    cfg = BenchConfig(tuple(int(w) for w in a.widths.split(",")), a.n, a.trials, a.seed, a.groups)
    rows = bench_rows(cfg)
    sys.stdout.write(format_table(rows))
    return 0 if all(r[-1] == "ok" for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
