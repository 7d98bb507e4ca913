"""Silent-mode configuring rules.

A rule reads ``(day, [start, end)) -> SILENT``. Its antecedent is a single
temporal context and its consequent is fixed, so Apriori's frequent-itemset
search has nothing to enumerate: support and confidence are counted directly.

    support    = P(X, Y) = unavailable calls in the period / |D|
    confidence = P(Y | X) = unavailable calls in the period / calls in the period

``|D|`` is the number of incoming-related (Accept/Reject/Missed) records.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .applicability import DEFAULT_CANDIDATES, SweepResult, sweep_week
from .calllog import Dataset, Day
from .merging import UnavailabilityPeriod, mine_day
from .slicing import check_threshold, fmt_minute, parse_clock

SILENT = "SILENT"
RULE_KEYS = ("day", "start", "end", "mode", "confidence", "support", "support_count")


@dataclass(frozen=True)
class SilentRule:
    day: Day
    start: int
    end: int
    confidence: float
    support: float
    support_count: int
    consequent: str = SILENT

    def covers(self, day: int, minute: int) -> bool:
        return day == self.day and self.start <= minute < self.end

    def notation(self) -> str:
        return (
            f"DayTime → {self.day.label} [{fmt_minute(self.start)}-{fmt_minute(self.end)}] "
            f"⇒ RingerMode → Silent (Conf={self.confidence * 100:.0f}%)"
        )

    def to_dict(self) -> dict:
        return {
            "day": self.day.label,
            "start": fmt_minute(self.start),
            "end": fmt_minute(self.end),
            "mode": self.consequent,
            "confidence": self.confidence,
            "support": self.support,
            "support_count": self.support_count,
        }

    @classmethod
    def from_dict(cls, obj: Mapping) -> "SilentRule":
        missing = set(RULE_KEYS) - set(obj)
        if missing:
            raise ValueError(f"rule is missing keys: {sorted(missing)}")
        if obj["mode"] != SILENT:
            raise ValueError(f"unsupported ringer mode {obj['mode']!r}")
        return cls(
            Day.parse(obj["day"]),
            parse_clock(obj["start"]),
            parse_clock(obj["end"]),
            float(obj["confidence"]),
            float(obj["support"]),
            int(obj["support_count"]),
        )


def _period_counts(data: Dataset, day: Day, start: int, end: int) -> tuple[int, int]:
    minutes, codes = data.day_arrays(day)
    inside = (minutes >= start) & (minutes < end) & (codes != kernels.OUTGOING)
    unavail = inside & ((codes == kernels.REJECT) | (codes == kernels.MISSED))
    return int(np.count_nonzero(inside)), int(np.count_nonzero(unavail))


def generate_rules(
    periods: Mapping[Day, Iterable[UnavailabilityPeriod]] | Iterable[SweepResult],
    data: Dataset,
    t: float,
    *,
    min_support_count: int = 1,
) -> list[SilentRule]:
    """Turn unavailability periods into SILENT rules, dropping those below ``t``.

    ``periods`` is either a day -> periods mapping or a collection of sweep
    results, in which case each day's optimal-base periods are used.
    Confidence is recounted over every record falling in the period.
    """
    t = check_threshold(t)
    if not isinstance(periods, Mapping):
        periods = {res.day: res.optimal_periods for res in periods}
    n_total = data.incoming_count()
    rules = []
    for day, plist in periods.items():
        day = Day.parse(day)
        for p in plist:
            n_in, n_unavail = _period_counts(data, day, p.start, p.end)
            if n_in == 0:
                continue
            conf = n_unavail / n_in
            if conf < t or n_unavail < min_support_count:
                continue
            rules.append(SilentRule(day, p.start, p.end, conf, n_unavail / n_total, n_unavail))
    rules.sort(key=lambda r: (r.day, r.start))
    return rules


def mine_rules(
    data: Dataset,
    t: float,
    candidates: Sequence[int] = DEFAULT_CANDIDATES,
    *,
    min_events: int = 1,
    c_max: int | str = "day",
    min_support_count: int | None = None,
) -> tuple[list[SilentRule], dict[Day, SweepResult]]:
    """Sweep base periods per day, then emit rules at each day's optimum."""
    sweeps = sweep_week(data, t, candidates, min_events=min_events, c_max=c_max)
    if min_support_count is None:
        min_support_count = min_events
    rules = generate_rules(sweeps.values(), data, t, min_support_count=min_support_count)
    return rules, sweeps


def rules_at_base(
    data: Dataset, t: float, base: int, *, min_events: int = 1, min_support_count: int | None = None
) -> list[SilentRule]:
    """Rules for every day at one fixed base period (no sweep)."""
    periods = {day: mine_day(data, day, base, t, min_events) for day in Day}
    if min_support_count is None:
        min_support_count = min_events
    return generate_rules(periods, data, t, min_support_count=min_support_count)


def serialize_rules(rules: Iterable[SilentRule]) -> bytes:
    return json.dumps([r.to_dict() for r in rules], indent=2, ensure_ascii=False).encode("utf-8")


def deserialize_rules(blob: bytes | str) -> list[SilentRule]:
    data = json.loads(blob)
    if not isinstance(data, list):
        raise ValueError("rule file must hold a JSON array")
    return [SilentRule.from_dict(obj) for obj in data]
