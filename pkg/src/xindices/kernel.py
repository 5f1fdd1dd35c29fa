"""Generic rank-ratio engine behind every index in the family.

Items are ranked by weight descending (ties broken by label ascending, byte
order), then a threshold rule over a per-rank ratio yields the index value:

* h-type: ratio at rank r is weight/r; the value is the largest rank whose
  ratio is still >= 1, or 0 when no rank qualifies.
* g-type: ratio at rank r is (cumulative weight through r)/r**2; the value is
  the largest qualifying rank, capped at the number of items (no fictitious
  zero-weight items are appended).
* first-crossing: for externally supplied, possibly non-monotone ratios the
  value is (smallest rank with ratio < 1) - 1; n when no rank crosses, 0 when
  rank 1 already fails. Ranks after the first crossing are ignored even if
  the ratio climbs back above 1.

All comparisons are exact floating comparisons; ratios are plain divisions
with no rounding, so a weight exactly equal to its rank qualifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .corpus import WeightedItem

INDEX_KINDS = ("x", "xc", "xd", "xdf", "xdfn", "ivw", "xo", "nested")
RATIO_TYPES = ("h", "g")


class RankRow(NamedTuple):
    rank: int
    label: str
    weight: float
    ratio: float


@dataclass(frozen=True)
class RankedTable:
    """Rank-ordered rows; ranks run 1..n and weights never increase."""

    rows: tuple[RankRow, ...]

    def __post_init__(self) -> None:
        prev_weight = None
        for i, row in enumerate(self.rows, start=1):
            if row.rank != i:
                raise ValueError(f"ranks must be consecutive from 1; got {row.rank} at position {i}")
            if row.weight < 0:
                raise ValueError(f"negative weight at rank {i}")
            if prev_weight is not None and row.weight > prev_weight:
                raise ValueError(f"weights increase at rank {i}")
            prev_weight = row.weight

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class IndexResult:
    """An index value together with the ranked table it was read off."""

    kind: str
    ratio_type: str
    value: int
    table: RankedTable

    def __post_init__(self) -> None:
        if self.kind not in INDEX_KINDS:
            raise ValueError(f"unknown index kind {self.kind!r}")
        if self.ratio_type not in RATIO_TYPES:
            raise ValueError(f"unknown ratio type {self.ratio_type!r}")
        if not 0 <= self.value <= len(self.table):
            raise ValueError("index value out of range for its table")


def rank_items(items: Iterable[WeightedItem]) -> list[WeightedItem]:
    """Sort descending by weight, ties by label ascending.

    The tie-break makes table output byte-reproducible; it cannot affect the
    index value, which depends on the weight multiset alone.
    """
    return sorted(items, key=lambda it: (-it.weight, it.label))


def h_type_index(items: Iterable[WeightedItem], kind: str = "x") -> IndexResult:
    ranked = rank_items(items)
    rows = []
    value = 0
    for r, item in enumerate(ranked, start=1):
        ratio = item.weight / r
        rows.append(RankRow(r, item.label, item.weight, ratio))
        if ratio >= 1.0:
            value = r
    return IndexResult(kind, "h", value, RankedTable(tuple(rows)))


def g_type_index(items: Iterable[WeightedItem], kind: str = "x") -> IndexResult:
    ranked = rank_items(items)
    rows = []
    value = 0
    cumulative = 0  # int start keeps exact (rational) weights exact
    for r, item in enumerate(ranked, start=1):
        cumulative += item.weight
        ratio = cumulative / (r * r)
        rows.append(RankRow(r, item.label, item.weight, ratio))
        if cumulative >= r * r:
            value = r
    return IndexResult(kind, "g", value, RankedTable(tuple(rows)))


def first_crossing_index(ranked: RankedTable, kind: str = "ivw") -> IndexResult:
    """Literal first-crossing rule over an already-ratioed table.

    The caller chooses the ranking basis and fills the ratio column; this
    only scans for the first rank where the ratio drops below 1.
    """
    value = len(ranked)
    for row in ranked.rows:
        if row.ratio < 1.0:
            value = row.rank - 1
            break
    return IndexResult(kind, "h", value, ranked)


def kernel_index(items: Iterable[WeightedItem], ratio_type: str, kind: str) -> IndexResult:
    if ratio_type == "h":
        return h_type_index(items, kind)
    if ratio_type == "g":
        return g_type_index(items, kind)
    raise ValueError(f"unknown ratio type {ratio_type!r}")
