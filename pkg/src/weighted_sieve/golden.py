"""Published constants and the bands used to compare computed values with them.

Published constants are one-sided truncations.  A lower-bound constant c
passes when the computed value lies in [c, c + w]; an upper-bound constant
when it lies in [c - w, c].  The width w is 2e-3, or 5e-5 for constants
printed with six or more decimals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds import BoundBreakdown

WIDE = 2e-3
NARROW = 5e-5


def decimals(text: str) -> int:
    return len(text.split(".")[1]) if "." in text else 0


def band_width(text: str) -> float:
    return NARROW if decimals(text) >= 6 else WIDE


@dataclass(frozen=True)
class GoldenRow:
    theorem: str
    name: str
    printed: str
    direction: str  # "lower", "upper", "near" or "at_most"
    width: float | None = None
    interval: tuple[float, float] | None = None

    @property
    def value(self) -> float:
        return float(self.printed)

    def band(self) -> tuple[float, float]:
        if self.interval is not None:
            return self.interval
        c = self.value
        w = self.width if self.width is not None else band_width(self.printed)
        if self.direction == "lower":
            return c, c + w
        if self.direction == "upper":
            return c - w, c
        if self.direction == "near":
            return c - w, c + w
        if self.direction == "at_most":
            return -math.inf, c
        raise ValueError(self.direction)

    def passes(self, computed: float) -> bool:
        lo, hi = self.band()
        return lo <= computed <= hi


def _rows(theorem, table):
    return [GoldenRow(theorem, *item) for item in table]


THEOREM1_ROWS = _rows("theorem1", [
    ("S11", "14.82216", "lower"),
    ("S12", "9.30664", "lower"),
    ("S1", "53.77312", "lower"),
    ("S2", "5.201296", "lower"),
    ("S31", "21.9016", "upper"),
    ("S32", "19.40136", "upper"),
    ("S3", "41.30296", "upper"),
    ("S4", "10.69152", "upper"),
    ("S7", "0.5160672", "upper"),
    ("S61", "0.0864362", "upper"),
    ("S62", "0.5208761", "upper"),
    ("S6", "0.6073123", "upper"),
    ("S5", "1.87206", "upper"),
    # the three totals are sums of already truncated components, so their
    # printed digits carry the accumulated truncation; they get the wide band
    ("positive", "58.974416", "lower", WIDE),
    ("negative", "55.505987", "upper", WIDE),
    ("total", "3.468429", "lower", WIDE),
    ("combined", "0.8671", "lower", None, (0.8671, 0.8672)),
])

THEOREM2_ROWS = _rows("theorem2", [
    ("S11", "16.70802", "lower"),
    ("S12", "10.340342", "lower"),
    ("S1", "60.464402", "lower"),
    ("S2", "5.914688", "lower"),
    ("S31", "24.63508", "upper"),
    ("S32", "21.808021", "upper"),
    ("S3", "46.443101", "upper"),
    ("S4", "13.953531", "upper"),
    ("S7", "0.771273", "upper"),
    ("S61", "0.115227", "upper"),
    ("S62", "0.654234", "upper"),
    ("S6", "0.769461", "upper"),
    ("S5", "3.669999", "upper"),
    ("positive", "66.37909", "lower"),
    ("negative", "66.378638", "upper"),
    ("total", "0.000452", "near"),
    ("combined", "0.000113", "lower"),
])

THEOREM5_ROWS = _rows("theorem5", [
    ("combined", "7.928", "at_most"),
])


def breakdown_value(b: BoundBreakdown, name: str) -> float:
    """Value of a component, a component group or a total of a breakdown."""
    c = b.components
    if name in c:
        return c[name]
    if name == "S1":
        return 3.0 * c["S11"] + c["S12"]
    if name in ("S2", "S3", "S4", "S5", "S6", "S7"):
        return b.group(name)
    if name == "positive":
        return b.positive_total
    if name == "negative":
        return b.negative_total
    if name == "total":
        return b.weighted_sum
    if name == "combined":
        return b.combined
    raise KeyError(name)


def display_name(row: GoldenRow) -> str:
    prime = "'" if row.theorem == "theorem2" and row.name.startswith("S") else ""
    return f"{row.theorem}:{row.name}{prime}"
