"""Coverage and accuracy of a rule set.

coverage = n_covers / |D|, accuracy = n_correct / n_covers, where a record is
covered if some rule's period contains it and correct if it is a Reject or
Missed call.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .applicability import DEFAULT_CANDIDATES
from .calllog import Dataset, filter_incoming_related
from .rulegen import SilentRule, mine_rules
from .slicing import check_threshold


class EmptyDataset(ValueError):
    pass


@dataclass(frozen=True)
class EvalReport:
    n_covers: int
    n_correct: int
    dataset_size: int
    threshold: float | None = None
    n_rules: int = 0

    @property
    def coverage(self) -> float:
        return self.n_covers / self.dataset_size

    @property
    def accuracy(self) -> float | None:
        """None when no record is covered."""
        return self.n_correct / self.n_covers if self.n_covers else None


def covered_mask(rules: Iterable[SilentRule], data: Dataset) -> np.ndarray:
    days, minutes = data.days, data.minutes
    mask = np.zeros(len(data), dtype=np.bool_)
    for r in rules:
        mask |= (days == int(r.day)) & (minutes >= r.start) & (minutes < r.end)
    return mask


def evaluate(rules: Sequence[SilentRule], data: Dataset, threshold: float | None = None) -> EvalReport:
    data = filter_incoming_related(data)
    if len(data) == 0:
        raise EmptyDataset("cannot evaluate rules on an empty dataset")
    covered = covered_mask(rules, data)
    unavail = (data.codes == kernels.REJECT) | (data.codes == kernels.MISSED)
    return EvalReport(
        n_covers=int(np.count_nonzero(covered)),
        n_correct=int(np.count_nonzero(covered & unavail)),
        dataset_size=len(data),
        threshold=threshold,
        n_rules=len(rules),
    )


def threshold_curve(
    data: Dataset,
    thresholds: Iterable[float],
    candidates: Sequence[int] = DEFAULT_CANDIDATES,
    *,
    min_events: int = 1,
    c_max: int | str = "day",
    min_support_count: int | None = None,
    holdout: float | None = None,
) -> list[EvalReport]:
    """Run the full mining pipeline once per threshold and evaluate each rule set.

    By default rules are scored on the data they were mined from. With
    ``holdout`` the last fraction of the log (chronologically) is kept aside
    for scoring.
    """
    ts = sorted({check_threshold(t) for t in thresholds}, reverse=True)
    data = filter_incoming_related(data)
    if len(data) == 0:
        raise EmptyDataset("cannot evaluate rules on an empty dataset")
    train, test = (data, data) if holdout is None else data.split(holdout)
    if len(test) == 0:
        raise EmptyDataset("holdout split left no records to evaluate")
    reports = []
    for t in ts:
        rules, _ = mine_rules(
            train, t, candidates, min_events=min_events, c_max=c_max, min_support_count=min_support_count
        )
        reports.append(evaluate(rules, test, threshold=t))
    return reports


def curve_csv(reports: Iterable[EvalReport]) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("threshold", "accuracy", "coverage"))
    for rep in reports:
        acc = "" if rep.accuracy is None else repr(rep.accuracy)
        writer.writerow((repr(rep.threshold), acc, repr(rep.coverage)))
    return buf.getvalue()
