"""Run configurations and the name registries behind the command line."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .algorithms.composed import ComposedPartitioner
from .algorithms.first_fit import FirstFit
from .algorithms.local import LocalCoreDisjoint
from .algorithms.upgrowing import UpGrowingInterval
from .spoilers.local import MutantColorer


class UsageError(ValueError):
    """Bad names or parameters; maps to exit code 64."""


ALGORITHMS = {
    "first-fit": FirstFit,
    "upgrowing-interval": UpGrowingInterval,
    "composed-w3": ComposedPartitioner,
}

LOCAL_COLORERS = {
    "local-core-disjoint": LocalCoreDisjoint,
    "mutant-9": lambda: MutantColorer(9),
    "mutant-10": lambda: MutantColorer(10, (0, 2)),
}

# spoilers taking an optional ":<arg>" suffix
SPOILERS = ("ff-adversary", "interval-lb", "random", "random-upgrowing", "replay")
LOCAL_SPOILERS = ("lcp3-scripts", "random-local")
GEN_KINDS = ("random-poset", "random-upgrowing-interval", "random-width-w")


def split_name(name):
    base, _, arg = name.partition(":")
    return base, (arg or None)


@dataclass
class RunConfig:
    alg: str = "first-fit"
    spoiler: str = "random"
    width: int = 3
    n: int = 100
    seed: int = 0
    out: Optional[str] = None
    groups: int = 6

    def validate(self):
        if self.alg not in ALGORITHMS and self.alg not in LOCAL_COLORERS:
            raise UsageError(f"unknown algorithm {self.alg!r}")
        base, arg = split_name(self.spoiler)
        local = self.alg in LOCAL_COLORERS
        if local and base not in LOCAL_SPOILERS:
            raise UsageError(f"{self.alg} plays the local game; use one of {', '.join(LOCAL_SPOILERS)}")
        if not local and base not in SPOILERS:
            raise UsageError(f"unknown spoiler {self.spoiler!r}")
        if base == "interval-lb":
            try:
                w = int(arg)
            except (TypeError, ValueError):
                raise UsageError("interval-lb needs a width, e.g. interval-lb:4") from None
            if w < 1:
                raise UsageError("interval-lb width must be positive")
        if base == "replay" and not arg:
            raise UsageError("replay needs a path, e.g. replay:input.txt")
        if self.alg == "composed-w3" and self.width > 3:
            raise UsageError("composed-w3 handles width at most 3")
        if self.width < 1 or self.n < 0 or self.groups < 0:
            raise UsageError("width must be positive, -n and --groups non-negative")
        return self

    def rng(self):
        return random.Random(self.seed)


@dataclass
class GenConfig:
    kind: str = "random-poset"
    n: int = 20
    width: int = 3
    seed: int = 0
    density: float = 0.35
    out: Optional[str] = None

    def validate(self):
        if self.kind not in GEN_KINDS:
            raise UsageError(f"unknown generator {self.kind!r}; choose from {', '.join(GEN_KINDS)}")
        if self.n < 0:
            raise UsageError("-n must be non-negative")
        if self.kind != "random-poset" and self.width < 1 and self.n > 0:
            raise UsageError("cannot place points with width below 1")
        if not 0 <= self.density <= 1:
            raise UsageError("density must lie in [0, 1]")
        return self


@dataclass
class BenchConfig:
    widths: tuple = (2, 3, 4, 5)
    n: int = 300
    trials: int = 50
    seed: int = 0
    groups: int = 20

    def validate(self):
        if not self.widths or min(self.widths) < 1:
            raise UsageError("widths must be positive")
        if self.n < 0 or self.trials < 1:
            raise UsageError("need -n >= 0 and --trials >= 1")
        return self


def trial_rng(seed, *key):
    """Independent deterministic stream per (seed, key...)."""
    return random.Random(":".join(str(k) for k in (seed,) + key))
