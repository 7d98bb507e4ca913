"""Collapse runs of unavailability-dominant slices into periods."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .calllog import Dataset, Day
from .slicing import TimeSlice, check_threshold, fmt_minute, slice_edges


@dataclass(frozen=True)
class UnavailabilityPeriod:
    day: Day
    start: int
    end: int
    accept: int
    reject: int
    missed: int
    # False when the aggregate ratio over the whole span is below t
    threshold_met: bool = True

    def __post_init__(self):
        if not self.start < self.end:
            raise ValueError(f"invalid period bounds [{self.start}, {self.end})")

    @property
    def support_count(self) -> int:
        return self.reject + self.missed

    @property
    def total(self) -> int:
        return self.accept + self.reject + self.missed

    @property
    def confidence(self) -> float:
        return self.support_count / self.total if self.total else 0.0

    @property
    def width(self) -> int:
        return self.end - self.start

    def __str__(self) -> str:
        return f"{self.day.label}[{fmt_minute(self.start)}-{fmt_minute(self.end)}]"


def _period(day, start, end, acc, rej, mis, t) -> UnavailabilityPeriod:
    total = acc + rej + mis
    met = True if t is None else (total > 0 and (rej + mis) / total >= t)
    return UnavailabilityPeriod(Day(day), int(start), int(end), int(acc), int(rej), int(mis), bool(met))


def merge_dominant_slices(slices: list[TimeSlice], t: float | None = None) -> list[UnavailabilityPeriod]:
    """Merge each maximal run of adjacent dominant slices into one period.

    Slices must be sorted and belong to one day. Two slices are adjacent only
    if one ends exactly where the next starts. When ``t`` is given, each
    period's ``threshold_met`` flag records whether its aggregate confidence
    still reaches ``t``.
    """
    if not slices:
        return []
    day = slices[0].day
    if any(s.day != day for s in slices):
        raise ValueError("slices span more than one day")
    mask = np.fromiter((s.dominant for s in slices), dtype=np.bool_, count=len(slices))
    starts, stops = kernels.run_bounds(mask)

    out = []
    for lo, hi in zip(starts, stops):
        run_start = lo
        for k in range(lo + 1, hi + 1):
            if k == hi or slices[k].start != slices[k - 1].end:
                run = slices[run_start:k]
                out.append(_period(
                    day, run[0].start, run[-1].end,
                    sum(s.accept for s in run), sum(s.reject for s in run), sum(s.missed for s in run), t,
                ))
                run_start = k
    return out


def mine_day(data: Dataset, day: Day, base: int, t: float, min_events: int = 1) -> list[UnavailabilityPeriod]:
    """Slice one weekday at ``base`` minutes, test dominance, merge runs.

    Equivalent to ``merge_dominant_slices(mark_dominance(bin_activities(...)))``
    but runs on arrays end to end. Outgoing records are ignored.
    """
    t = check_threshold(t)
    day = Day.parse(day)
    edges = slice_edges(base)
    minutes, codes = data.day_arrays(day)
    counts = kernels.bin_counts(minutes, codes, edges)
    mask = kernels.dominant_mask(counts, t, min_events)
    starts, stops = kernels.run_bounds(mask)
    if len(starts) == 0:
        return []
    cum = np.vstack([np.zeros((1, 3), dtype=np.int64), np.cumsum(counts, axis=0)])
    agg = cum[stops] - cum[starts]
    return [
        _period(day, edges[lo], edges[hi], a[0], a[1], a[2], t)
        for lo, hi, a in zip(starts, stops, agg)
    ]
