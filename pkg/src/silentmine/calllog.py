"""Call-log ingestion and activity classification.

A log is a CSV file with the header ``timestamp,call_type,duration_sec``.
Extra columns (caller ids and the like) are tolerated and ignored.
Timestamps are local wall-clock times and are never converted.
"""
from __future__ import annotations

import csv
import enum
import io
import logging
from dataclasses import dataclass, field
from datetime import datetime
from functools import cached_property
from pathlib import Path
from typing import BinaryIO, Iterable

import numpy as np

from . import kernels

logger = logging.getLogger(__name__)

COLUMNS = ("timestamp", "call_type", "duration_sec")
TIMESTAMP_FORMAT = "%Y-%m-%dT%H:%M:%S"
_ACCEPTED_FORMATS = (TIMESTAMP_FORMAT, "%Y-%m-%d %H:%M:%S")


class Day(enum.IntEnum):
    MONDAY = 0
    TUESDAY = 1
    WEDNESDAY = 2
    THURSDAY = 3
    FRIDAY = 4
    SATURDAY = 5
    SUNDAY = 6

    @property
    def label(self) -> str:
        return self.name.capitalize()

    @classmethod
    def parse(cls, value: "str | int | Day") -> "Day":
        if isinstance(value, cls):
            return value
        if isinstance(value, int):
            return cls(value)
        text = value.strip().upper()
        for day in cls:
            if day.name == text or day.name[:3] == text:
                return day
        raise ValueError(f"unknown day of week: {value!r}")


class CallType(str, enum.Enum):
    INCOMING = "INCOMING"
    MISSED = "MISSED"
    OUTGOING = "OUTGOING"


class Activity(enum.IntEnum):
    """Classified call activity. Values double as kernel codes."""

    ACCEPT = kernels.ACCEPT
    REJECT = kernels.REJECT
    MISSED = kernels.MISSED
    OUTGOING = kernels.OUTGOING

    @property
    def is_unavailable(self) -> bool:
        return self in (Activity.REJECT, Activity.MISSED)


class LogFormatError(ValueError):
    """Base class for ingestion failures."""


class FatalFormat(LogFormatError):
    """The file cannot be read as a call log at all."""


@dataclass(frozen=True)
class MalformedRow:
    line: int
    reason: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.reason}"


@dataclass(frozen=True)
class CallRecord:
    timestamp: datetime
    raw_type: CallType
    duration: int

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError(f"negative duration {self.duration}")
        if self.raw_type is CallType.MISSED and self.duration != 0:
            raise ValueError(f"MISSED call with nonzero duration {self.duration}")

    @property
    def day(self) -> Day:
        return Day(self.timestamp.weekday())

    @property
    def minute_of_day(self) -> int:
        return self.timestamp.hour * 60 + self.timestamp.minute


def classify_activity(record: CallRecord) -> Activity:
    if record.raw_type is CallType.OUTGOING:
        return Activity.OUTGOING
    if record.raw_type is CallType.MISSED:
        return Activity.MISSED
    return Activity.ACCEPT if record.duration > 0 else Activity.REJECT


@dataclass(frozen=True)
class Dataset:
    """An ordered, classified call log.

    ``records`` holds ``(CallRecord, Activity)`` pairs sorted by timestamp.
    ``errors`` lists rows that were rejected during parsing.
    """

    records: tuple[tuple[CallRecord, Activity], ...] = ()
    errors: tuple[MalformedRow, ...] = field(default=(), compare=False)

    @classmethod
    def from_records(cls, records: Iterable[CallRecord], errors=()) -> "Dataset":
        ordered = sorted(records, key=lambda r: r.timestamp)
        return cls(tuple((r, classify_activity(r)) for r in ordered), tuple(errors))

    @property
    def record_count(self) -> int:
        return len(self.records)

    def __len__(self) -> int:
        return len(self.records)

    @cached_property
    def _columns(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        n = len(self.records)
        days = np.empty(n, dtype=np.int64)
        minutes = np.empty(n, dtype=np.int64)
        codes = np.empty(n, dtype=np.int64)
        for i, (rec, act) in enumerate(self.records):
            ts = rec.timestamp
            days[i] = ts.weekday()
            minutes[i] = ts.hour * 60 + ts.minute
            codes[i] = int(act)
        return days, minutes, codes

    @property
    def days(self) -> np.ndarray:
        return self._columns[0]

    @property
    def minutes(self) -> np.ndarray:
        return self._columns[1]

    @property
    def codes(self) -> np.ndarray:
        return self._columns[2]

    def day_arrays(self, day: Day) -> tuple[np.ndarray, np.ndarray]:
        """Minute-of-day and activity-code arrays for one weekday."""
        sel = self.days == int(day)
        return self.minutes[sel], self.codes[sel]

    def unavailable_count(self, day: Day | None = None) -> int:
        codes = self.codes if day is None else self.day_arrays(day)[1]
        return int(np.count_nonzero((codes == kernels.REJECT) | (codes == kernels.MISSED)))

    def incoming_count(self, day: Day | None = None) -> int:
        codes = self.codes if day is None else self.day_arrays(day)[1]
        return int(np.count_nonzero(codes != kernels.OUTGOING))

    def split(self, fraction: float) -> tuple["Dataset", "Dataset"]:
        """Chronological split: the last ``fraction`` of records is held out."""
        if not 0.0 < fraction < 1.0:
            raise ValueError(f"holdout fraction must be in (0, 1), got {fraction}")
        cut = len(self.records) - int(round(len(self.records) * fraction))
        return Dataset(self.records[:cut]), Dataset(self.records[cut:])


def filter_incoming_related(data: Dataset) -> Dataset:
    """Drop Outgoing records; they say nothing about availability."""
    kept = tuple(pair for pair in data.records if pair[1] is not Activity.OUTGOING)
    if len(kept) == len(data.records):
        return data
    return Dataset(kept, data.errors)


def _parse_timestamp(text: str) -> datetime:
    for fmt in _ACCEPTED_FORMATS:
        try:
            return datetime.strptime(text, fmt)
        except ValueError:
            pass
    raise ValueError(f"bad timestamp {text!r} (expected YYYY-MM-DDThh:mm:ss)")


def _parse_row(row: dict) -> CallRecord:
    ts_text = (row.get("timestamp") or "").strip()
    type_text = (row.get("call_type") or "").strip().upper()
    dur_text = (row.get("duration_sec") or "").strip()
    timestamp = _parse_timestamp(ts_text)
    try:
        raw_type = CallType(type_text)
    except ValueError:
        raise ValueError(f"unknown call type {type_text!r}") from None
    try:
        duration = int(dur_text)
    except ValueError:
        raise ValueError(f"bad duration {dur_text!r}") from None
    return CallRecord(timestamp, raw_type, duration)


def parse_log(source: bytes | str | BinaryIO, format: str = "csv") -> Dataset:
    """Parse a call log into a classified, time-sorted :class:`Dataset`.

    Bad rows are skipped and listed in ``Dataset.errors``. Raises
    :class:`FatalFormat` when the header is missing or when the file has data
    rows but none of them parse.
    """
    if format.lower() != "csv":
        raise FatalFormat(f"unsupported log format {format!r}")
    if isinstance(source, str):
        raw = source.encode("utf-8")
    elif isinstance(source, (bytes, bytearray)):
        raw = bytes(source)
    else:
        raw = source.read()
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise FatalFormat(f"log is not valid UTF-8: {exc}") from None

    reader = csv.reader(io.StringIO(text, newline=""))
    header = None
    for row in reader:
        if any(cell.strip() for cell in row):
            header = [cell.strip().lower() for cell in row]
            break
    if header is None or not set(COLUMNS) <= set(header):
        raise FatalFormat(f"missing header; expected columns {','.join(COLUMNS)}")

    records: list[CallRecord] = []
    errors: list[MalformedRow] = []
    for row in reader:
        if not any(cell.strip() for cell in row):
            continue
        line = reader.line_num
        if len(row) < len(header):
            errors.append(MalformedRow(line, f"expected {len(header)} fields, got {len(row)}"))
            continue
        try:
            records.append(_parse_row(dict(zip(header, row))))
        except ValueError as exc:
            errors.append(MalformedRow(line, str(exc)))

    if errors and not records:
        raise FatalFormat(f"no parseable rows ({len(errors)} malformed, first: {errors[0]})")
    if errors:
        logger.warning("skipped %d malformed row(s), first at %s", len(errors), errors[0])
    return Dataset.from_records(records, errors)


def read_log(path: str | Path) -> Dataset:
    with open(path, "rb") as fh:
        return parse_log(fh)


def serialize_log(data: Dataset | Iterable[CallRecord]) -> bytes:
    """Write records back out in the canonical CSV form."""
    if isinstance(data, Dataset):
        records = [rec for rec, _ in data.records]
    else:
        records = list(data)
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for rec in records:
        writer.writerow((rec.timestamp.strftime(TIMESTAMP_FORMAT), rec.raw_type.value, rec.duration))
    return buf.getvalue().encode("utf-8")
