"""Fixed-width time slices of a weekday and their unavailability verdicts."""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import kernels
from .calllog import Activity, Dataset, Day

MINUTES_PER_DAY = 1440


def check_base(minutes: int) -> int:
    if isinstance(minutes, bool) or int(minutes) != minutes or not 1 <= minutes <= MINUTES_PER_DAY:
        raise ValueError(f"base period must be an integer in [1, {MINUTES_PER_DAY}], got {minutes!r}")
    return int(minutes)


def check_threshold(t: float) -> float:
    t = float(t)
    if not 0.0 < t <= 1.0:
        raise ValueError(f"confidence threshold must be in (0, 1], got {t}")
    return t


def slice_edges(base: int) -> np.ndarray:
    """Slice boundaries for one day; the last slice is cut off at 24:00."""
    base = check_base(base)
    edges = np.arange(0, MINUTES_PER_DAY, base, dtype=np.int64)
    return np.append(edges, MINUTES_PER_DAY)


def fmt_minute(minute: int) -> str:
    return f"{minute // 60:02d}:{minute % 60:02d}"


def parse_clock(text: str) -> int:
    """Inverse of :func:`fmt_minute`; accepts "24:00" as end of day."""
    hh, mm = text.split(":")
    minute = int(hh) * 60 + int(mm)
    if not 0 <= int(mm) < 60 or not 0 <= minute <= MINUTES_PER_DAY:
        raise ValueError(f"bad clock time {text!r}")
    return minute


@dataclass(frozen=True)
class TimeSlice:
    day: Day
    start: int
    end: int
    accept: int = 0
    reject: int = 0
    missed: int = 0
    dominant: bool = False

    def __post_init__(self):
        if not 0 <= self.start < self.end <= MINUTES_PER_DAY:
            raise ValueError(f"invalid slice bounds [{self.start}, {self.end})")

    @property
    def counts(self) -> dict[Activity, int]:
        return {Activity.ACCEPT: self.accept, Activity.REJECT: self.reject, Activity.MISSED: self.missed}

    @property
    def total(self) -> int:
        return self.accept + self.reject + self.missed

    @property
    def unavailable(self) -> int:
        return self.reject + self.missed

    @property
    def width(self) -> int:
        return self.end - self.start

    def __str__(self) -> str:
        return f"{self.day.label}[{fmt_minute(self.start)}-{fmt_minute(self.end)}]"


def generate_time_slices(base: int, day: Day = Day.MONDAY) -> list[TimeSlice]:
    edges = slice_edges(base)
    day = Day.parse(day)
    return [TimeSlice(day, int(a), int(b)) for a, b in zip(edges[:-1], edges[1:])]


def _edges_of(slices: list[TimeSlice]) -> np.ndarray:
    edges = np.fromiter((s.start for s in slices), dtype=np.int64, count=len(slices))
    edges = np.append(edges, slices[-1].end)
    if np.any(np.diff(edges) <= 0) or any(a.end != b.start for a, b in zip(slices, slices[1:])):
        raise ValueError("slices must be contiguous and sorted by start")
    return edges


def bin_activities(data: Dataset, day: Day, slices: list[TimeSlice]) -> list[TimeSlice]:
    """Return copies of ``slices`` with Accept/Reject/Missed counts filled in."""
    if not slices:
        return []
    minutes, codes = data.day_arrays(Day.parse(day))
    counts = kernels.bin_counts(minutes, codes, _edges_of(slices))
    return [
        replace(s, accept=int(c[0]), reject=int(c[1]), missed=int(c[2]), dominant=False)
        for s, c in zip(slices, counts)
    ]


def identify_unavail_dominant(slice_: TimeSlice, t: float, min_events: int = 1) -> bool:
    """True when Reject+Missed make up at least ``t`` of the slice's calls.

    Reject-only and Missed-only dominance are implied, since each is bounded
    by the combined share.
    """
    t = check_threshold(t)
    total = slice_.total
    if total == 0 or total < min_events:
        return False
    return slice_.unavailable / total >= t


def mark_dominance(slices: list[TimeSlice], t: float, min_events: int = 1) -> list[TimeSlice]:
    t = check_threshold(t)
    if not slices:
        return []
    counts = np.array([(s.accept, s.reject, s.missed) for s in slices], dtype=np.int64)
    mask = kernels.dominant_mask(counts, t, min_events)
    return [replace(s, dominant=bool(m)) for s, m in zip(slices, mask)]
