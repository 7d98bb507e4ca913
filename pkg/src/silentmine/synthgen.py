"""Seeded synthetic call logs with planted unavailability periods.

Generation contract (stable for a given seed and numpy's PCG64 stream):

for each week, for each weekday Monday..Sunday, the day is cut into segments
(planted periods and the background gaps between them) in time order. For each
segment, in order:

1. ``n ~ Poisson(rate_per_hour * minutes / 60)``
2. ``n`` call times, uniform integer seconds in the segment, sorted
3. ``n`` uniforms; a call is unavailable if its uniform < the segment's
   unavailability rate
4. ``n`` uniforms; an unavailable call is MISSED if its uniform < ``missed_share``,
   otherwise a rejected INCOMING call with zero duration
5. ``n`` integer durations in [10, 600] seconds for accepted calls

All draws are made even when unused, so the stream never depends on outcomes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date, datetime, timedelta
from typing import Mapping

import numpy as np

from .calllog import CallRecord, CallType, Dataset, Day
from .slicing import MINUTES_PER_DAY, fmt_minute, parse_clock

ACCEPT_DURATION = (10, 600)


class InvalidSpec(ValueError):
    pass


@dataclass(frozen=True)
class PlantedPeriod:
    day: Day
    start: int
    end: int
    unavail_rate: float


@dataclass(frozen=True)
class SynthSpec:
    weeks: int
    planted: tuple[PlantedPeriod, ...] = ()
    background_rate: float = 1.0
    background_unavail_fraction: float = 0.1
    seed: int = 0
    planted_rate: float = 6.0
    missed_share: float = 0.5
    start_date: date = date(2015, 1, 5)

    def __post_init__(self):
        if self.weeks < 0:
            raise InvalidSpec(f"weeks must be non-negative, got {self.weeks}")
        if self.background_rate < 0 or self.planted_rate < 0:
            raise InvalidSpec("call rates must be non-negative")
        for name in ("background_unavail_fraction", "missed_share"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise InvalidSpec(f"{name} must be in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise InvalidSpec("seed must fit in an unsigned 64-bit integer")
        by_day: dict[Day, list[PlantedPeriod]] = {}
        for p in self.planted:
            if not 0 <= p.start < p.end <= MINUTES_PER_DAY:
                raise InvalidSpec(f"bad planted bounds [{p.start}, {p.end})")
            if not 0.0 <= p.unavail_rate <= 1.0:
                raise InvalidSpec(f"unavail_rate must be in [0, 1], got {p.unavail_rate}")
            by_day.setdefault(p.day, []).append(p)
        for day, plist in by_day.items():
            plist.sort(key=lambda p: p.start)
            for a, b in zip(plist, plist[1:]):
                if b.start < a.end:
                    raise InvalidSpec(f"planted periods overlap on {day.label}")

    @classmethod
    def from_dict(cls, obj: Mapping) -> "SynthSpec":
        kwargs = dict(obj)
        try:
            kwargs["planted"] = tuple(
                PlantedPeriod(
                    Day.parse(p["day"]), parse_clock(p["start"]), parse_clock(p["end"]), float(p["unavail_rate"])
                )
                for p in obj.get("planted", ())
            )
            if "start_date" in kwargs:
                kwargs["start_date"] = date.fromisoformat(kwargs["start_date"])
            return cls(**kwargs)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidSpec):
                raise
            raise InvalidSpec(f"bad synth spec: {exc}") from None

    def to_dict(self) -> dict:
        return {
            "weeks": self.weeks,
            "planted": [
                {"day": p.day.label, "start": fmt_minute(p.start), "end": fmt_minute(p.end),
                 "unavail_rate": p.unavail_rate}
                for p in self.planted
            ],
            "background_rate": self.background_rate,
            "background_unavail_fraction": self.background_unavail_fraction,
            "seed": self.seed,
            "planted_rate": self.planted_rate,
            "missed_share": self.missed_share,
            "start_date": self.start_date.isoformat(),
        }


def load_spec(path) -> SynthSpec:
    with open(path, encoding="utf-8") as fh:
        try:
            return SynthSpec.from_dict(json.load(fh))
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"{path}: not valid JSON ({exc})") from None


def _segments(spec: SynthSpec, day: Day) -> list[tuple[int, int, float, float]]:
    """(start, end, calls per hour, unavailability rate) covering the whole day."""
    planted = sorted((p for p in spec.planted if p.day == day), key=lambda p: p.start)
    out = []
    cursor = 0
    for p in planted:
        if p.start > cursor:
            out.append((cursor, p.start, spec.background_rate, spec.background_unavail_fraction))
        out.append((p.start, p.end, spec.planted_rate, p.unavail_rate))
        cursor = p.end
    if cursor < MINUTES_PER_DAY:
        out.append((cursor, MINUTES_PER_DAY, spec.background_rate, spec.background_unavail_fraction))
    return out


def generate_records(spec: SynthSpec) -> list[CallRecord]:
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    # align to the Monday on or before start_date
    monday = spec.start_date - timedelta(days=spec.start_date.weekday())
    origin = datetime(monday.year, monday.month, monday.day)
    segments = {day: _segments(spec, day) for day in Day}
    lo_dur, hi_dur = ACCEPT_DURATION

    records = []
    for week in range(spec.weeks):
        for day in Day:
            day_origin = origin + timedelta(days=7 * week + int(day))
            for start, end, rate, unavail_rate in segments[day]:
                n = int(rng.poisson(rate * (end - start) / 60.0))
                secs = np.sort(rng.integers(start * 60, end * 60, size=n))
                u_unavail = rng.random(n)
                u_missed = rng.random(n)
                durations = rng.integers(lo_dur, hi_dur + 1, size=n)
                for k in range(n):
                    ts = day_origin + timedelta(seconds=int(secs[k]))
                    if u_unavail[k] < unavail_rate:
                        if u_missed[k] < spec.missed_share:
                            records.append(CallRecord(ts, CallType.MISSED, 0))
                        else:
                            records.append(CallRecord(ts, CallType.INCOMING, 0))
                    else:
                        records.append(CallRecord(ts, CallType.INCOMING, int(durations[k])))
    return records


def generate(spec: SynthSpec) -> Dataset:
    return Dataset.from_records(generate_records(spec))
