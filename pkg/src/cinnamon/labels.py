"""The closed set of recognised activities.

Enumeration order is load-bearing: every tie-break in classifier scoring
resolves to the earliest member, so the order below must never change.
"""

from __future__ import annotations

import enum


class ActivityLabel(enum.Enum):
    FastWalk = "FastWalk"
    SlowWalk = "SlowWalk"
    Rest = "Rest"
    Stairs = "Stairs"

    def __lt__(self, other: "ActivityLabel") -> bool:
        order = list(ActivityLabel)
        return order.index(self) < order.index(other)

    @classmethod
    def from_name(cls, name: str) -> "ActivityLabel":
        try:
            return cls[name]
        except KeyError:
            raise ValueError(f"unknown activity label {name!r}") from None


LABEL_ORDER: tuple[ActivityLabel, ...] = tuple(ActivityLabel)
