"""Width-2 adversary that drives First-Fit to one new chain per group.

Group G_m is a chain y_m < ... < y_1 presented bottom-up.  With the previous
group G_{m-1} = x_{m-1} < ... < x_1, the point y_k lies above every earlier
group except G_{m-1}, above x_{m-1}, ..., x_k and above y_m, ..., y_{k+1},
and is incomparable to x_{k-1}, ..., x_1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..game import Arrive


@dataclass
class FFAdversaryState:
    groups: list = field(default_factory=list)  # each group bottom-up
    next_id: int = 0

    @property
    def m(self):
        return len(self.groups)


def ff_adversary_next_group(s):
    """Arrivals of group G_{m+1}; updates ``s``."""
    m = s.m + 1
    older = [y for g in s.groups[: m - 2] for y in g]
    prev = s.groups[m - 2] if m >= 2 else []  # x_{m-1}, ..., x_1 bottom-up
    events = []
    group = []
    for k in range(m, 0, -1):
        y = s.next_id
        s.next_id += 1
        above = set(older) | set(prev[: m - k]) | set(group)
        events.append(Arrive(y, tuple(sorted(above))))
        group.append(y)
    s.groups.append(group)
    return events


def ff_adversary_events(groups):
    s = FFAdversaryState()
    out = []
    for _ in range(groups):
        out.extend(ff_adversary_next_group(s))
    return out


class FFAdversary:
    """PointSource presenting a fixed number of groups."""

    name = "ff-adversary"

    def __init__(self, groups):
        self.events = ff_adversary_events(groups)
        self.pos = 0

    def next(self, view):
        if self.pos >= len(self.events):
            return None
        e = self.events[self.pos]
        self.pos += 1
        return e
