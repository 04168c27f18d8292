"""Scoring for the two pilot instruments: frailty (GFI) and usability (PSSUQ).

GFI items arrive pre-binarized (0/1 per question, 15 questions); a total of
four or more marks frailty. PSSUQ has 16 items on a 1-7 scale (lower is
better); unanswered items are excluded from subscale means, and a subscale
with no answered items is undefined.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ValidationError

GFI_ITEM_COUNT = 15
GFI_FRAILTY_THRESHOLD = 4

PSSUQ_ITEM_COUNT = 16
#: Inclusive 1-based item ranges per subscale.
PSSUQ_SUBSCALES = {
    "sysuse": (1, 6),
    "infoqual": (7, 12),
    "interqual": (13, 15),
    "overall": (1, 16),
}


@dataclass(frozen=True)
class GfiResponse:
    items: tuple[int, ...]
    respondent_id: str = ""
    t: float = 0.0

    def __post_init__(self) -> None:
        if len(self.items) != GFI_ITEM_COUNT:
            raise ValidationError(
                f"GFI response must have exactly {GFI_ITEM_COUNT} items, got {len(self.items)}"
            )
        for i, item in enumerate(self.items):
            if item not in (0, 1):
                raise ValidationError(f"GFI item {i + 1} must be 0 or 1, got {item!r}")


@dataclass(frozen=True)
class GfiResult:
    total: int
    frail: bool


@dataclass(frozen=True)
class PssuqResponse:
    items: tuple[Optional[int], ...]  # None = not answered
    respondent_id: str = ""
    t: float = 0.0

    def __post_init__(self) -> None:
        if len(self.items) != PSSUQ_ITEM_COUNT:
            raise ValidationError(
                f"PSSUQ response must have exactly {PSSUQ_ITEM_COUNT} items, got {len(self.items)}"
            )
        for i, item in enumerate(self.items):
            if item is None:
                continue
            if not isinstance(item, int) or isinstance(item, bool) or not 1 <= item <= 7:
                raise ValidationError(
                    f"PSSUQ item {i + 1} must be an integer in [1, 7] or null, got {item!r}"
                )


@dataclass(frozen=True)
class PssuqResult:
    overall: Optional[float]
    sysuse: Optional[float]
    infoqual: Optional[float]
    interqual: Optional[float]
    answered_counts: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "overall": self.overall,
            "sysuse": self.sysuse,
            "infoqual": self.infoqual,
            "interqual": self.interqual,
            "answered_counts": dict(self.answered_counts),
        }


def score_gfi(response: GfiResponse) -> GfiResult:
    total = sum(response.items)
    return GfiResult(total=total, frail=total >= GFI_FRAILTY_THRESHOLD)


def _subscale_mean(items: Sequence[Optional[int]], first: int, last: int) -> tuple[Optional[float], int]:
    answered = [v for v in items[first - 1 : last] if v is not None]
    if not answered:
        return None, 0
    return sum(answered) / len(answered), len(answered)


def score_pssuq(response: PssuqResponse) -> PssuqResult:
    if all(v is None for v in response.items):
        raise ValidationError("PSSUQ response has no answered items")
    means: dict[str, Optional[float]] = {}
    counts: dict[str, int] = {}
    for name, (first, last) in PSSUQ_SUBSCALES.items():
        means[name], counts[name] = _subscale_mean(response.items, first, last)
    return PssuqResult(
        overall=means["overall"],
        sysuse=means["sysuse"],
        infoqual=means["infoqual"],
        interqual=means["interqual"],
        answered_counts=counts,
    )
