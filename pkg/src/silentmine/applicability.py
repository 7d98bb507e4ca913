"""Rule-set applicability and base-period selection.

The applicability of a set of N periods is

    sum_i (support_i / s_max) * (width_i / c_max)

where ``s_max`` is the number of Reject+Missed records on the day and
``c_max`` is the longest possible coverage (a day by default, a week when
scoring in week mode). The base period with the highest score wins; ties go
to the smaller period.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .calllog import Dataset, Day
from .merging import UnavailabilityPeriod, mine_day
from .slicing import MINUTES_PER_DAY, check_base, check_threshold

DEFAULT_CANDIDATES = tuple(range(5, 61, 5))
C_MAX = {"day": MINUTES_PER_DAY, "week": 7 * MINUTES_PER_DAY}


class DegenerateInput(ValueError):
    """No unavailability evidence to normalise against."""


@dataclass(frozen=True)
class ApplicabilityScore:
    base: int | None
    day: Day | None
    value: float
    n_rules: int


@dataclass(frozen=True)
class SweepResult:
    day: Day
    scores: tuple[ApplicabilityScore, ...] = ()
    optimal: int | None = None
    periods: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def is_empty(self) -> bool:
        return self.optimal is None

    @property
    def optimal_periods(self) -> list[UnavailabilityPeriod]:
        return [] if self.optimal is None else self.periods[self.optimal]


def resolve_c_max(c_max: int | str) -> int:
    if isinstance(c_max, str):
        try:
            return C_MAX[c_max]
        except KeyError:
            raise ValueError(f"c_max mode must be one of {sorted(C_MAX)}, got {c_max!r}") from None
    return int(c_max)


def applicability(
    periods: Iterable[UnavailabilityPeriod],
    s_max: int,
    c_max: int | str = "day",
    *,
    base: int | None = None,
    day: Day | None = None,
) -> ApplicabilityScore:
    if s_max <= 0:
        raise DegenerateInput(f"s_max must be positive, got {s_max}")
    c_max = resolve_c_max(c_max)
    if c_max <= 0:
        raise ValueError(f"c_max must be positive, got {c_max}")
    periods = list(periods)
    value = 0.0
    for p in periods:
        value += (p.support_count / s_max) * (p.width / c_max)
    return ApplicabilityScore(base, day, value, len(periods))


def normalize_candidates(candidates: Iterable[int]) -> list[int]:
    out = sorted({check_base(c) for c in candidates})
    if not out:
        raise ValueError("candidate base periods must be non-empty")
    return out


def sweep_base_periods(
    data: Dataset,
    day: Day,
    t: float,
    candidates: Sequence[int] = DEFAULT_CANDIDATES,
    *,
    min_events: int = 1,
    c_max: int | str = "day",
) -> SweepResult:
    """Score every candidate base period on one weekday and pick the best.

    Only periods whose aggregate confidence reaches ``t`` count towards the
    score. Returns an empty result when the day has no Reject/Missed calls.
    """
    t = check_threshold(t)
    day = Day.parse(day)
    cands = normalize_candidates(candidates)
    s_max = data.unavailable_count(day)
    if s_max == 0:
        return SweepResult(day)

    scores = []
    periods = {}
    best, best_value = None, -1.0
    for base in cands:
        mined = [p for p in mine_day(data, day, base, t, min_events) if p.threshold_met]
        score = applicability(mined, s_max, c_max, base=base, day=day)
        scores.append(score)
        periods[base] = mined
        if score.value > best_value:
            best, best_value = base, score.value
    return SweepResult(day, tuple(scores), best, periods)


def sweep_week(
    data: Dataset,
    t: float,
    candidates: Sequence[int] = DEFAULT_CANDIDATES,
    *,
    min_events: int = 1,
    c_max: int | str = "day",
) -> dict[Day, SweepResult]:
    return {
        day: sweep_base_periods(data, day, t, candidates, min_events=min_events, c_max=c_max)
        for day in Day
    }


def sweep_csv(results: Iterable[SweepResult]) -> str:
    """Render sweep scores as ``base_period_min,day,applicability`` rows."""
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("base_period_min", "day", "applicability"))
    for res in results:
        for score in res.scores:
            writer.writerow((score.base, res.day.label, repr(score.value)))
    return buf.getvalue()
