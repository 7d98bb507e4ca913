"""Command-line entry point: ``silentmine {ingest,synth,sweep,mine,eval}``.

Exit codes: 0 success, 1 data or I/O error, 2 usage error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter
from pathlib import Path

from .applicability import C_MAX, DEFAULT_CANDIDATES, sweep_csv, sweep_week
from .calllog import Activity, LogFormatError, read_log, serialize_log
from .evaluation import EmptyDataset, curve_csv, threshold_curve
from .rulegen import mine_rules, serialize_rules
from .slicing import check_base, check_threshold
from .synthgen import InvalidSpec, generate_records, load_spec


class DataError(Exception):
    pass


def _threshold(text: str) -> float:
    try:
        return check_threshold(float(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _thresholds(text: str) -> list[float]:
    return [_threshold(part) for part in text.split(",") if part.strip()]


def _candidates(text: str) -> list[int]:
    try:
        return [check_base(int(part)) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _fraction(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must be in (0, 1), got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="silentmine", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, need_input=True):
        if need_input:
            p.add_argument("--input", "-i", required=True, type=Path, help="call log CSV")
        p.add_argument("--output", "-o", type=Path, help="output file (default: stdout)")

    def add_mining(p):
        p.add_argument("--candidates", type=_candidates, default=list(DEFAULT_CANDIDATES),
                       help="comma-separated base periods in minutes (default: 5,10,...,60)")
        p.add_argument("--min-events", type=_positive_int, default=1,
                       help="minimum calls in a slice before it can be dominant")
        p.add_argument("--c-max", choices=sorted(C_MAX), default="day",
                       help="coverage normaliser for applicability")

    p = sub.add_parser("ingest", help="validate a log and write it back in canonical form")
    add_io(p)

    p = sub.add_parser("synth", help="generate a synthetic log from a JSON spec")
    p.add_argument("--spec", required=True, type=Path)
    p.add_argument("--seed", type=int, help="override the spec's seed")
    add_io(p, need_input=False)

    p = sub.add_parser("sweep", help="applicability per base period and day")
    add_io(p)
    p.add_argument("--confidence", "-t", type=_threshold, default=0.8)
    add_mining(p)

    p = sub.add_parser("mine", help="mine silent-mode rules as JSON")
    add_io(p)
    p.add_argument("--confidence", "-t", type=_threshold, default=0.8)
    add_mining(p)
    p.add_argument("--min-support-count", type=_positive_int, default=None,
                   help="minimum Reject+Missed calls per rule (default: --min-events)")

    p = sub.add_parser("eval", help="accuracy and coverage per confidence threshold")
    add_io(p)
    p.add_argument("--thresholds", type=_thresholds, default=[1.0, 0.8, 0.6])
    add_mining(p)
    p.add_argument("--min-support-count", type=_positive_int, default=None)
    p.add_argument("--holdout", type=_fraction, default=None,
                   help="score on the last FRACTION of the log instead of the mining data")
    return parser


def _emit(payload: bytes | str, path: Path | None) -> None:
    if isinstance(payload, str):
        payload = payload.encode("utf-8")
    if path is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    else:
        path.write_bytes(payload)


def _load(path: Path):
    if not path.is_file():
        raise DataError(f"input file not found: {path}")
    data = read_log(path)
    for err in data.errors:
        print(f"{path}:{err.line}: {err.reason}", file=sys.stderr)
    return data


def cmd_ingest(args) -> int:
    data = _load(args.input)
    tally = Counter(act for _, act in data.records)
    print(
        f"{args.input}: {data.record_count} records "
        + " ".join(f"{a.name.lower()}={tally.get(a, 0)}" for a in Activity)
        + f", {len(data.errors)} malformed",
        file=sys.stderr,
    )
    if args.output is not None:
        _emit(serialize_log(data), args.output)
    return 1 if data.errors else 0


def cmd_synth(args) -> int:
    spec = load_spec(args.spec)
    if args.seed is not None:
        spec = type(spec).from_dict({**spec.to_dict(), "seed": args.seed})
    _emit(serialize_log(generate_records(spec)), args.output)
    return 0


def cmd_sweep(args) -> int:
    data = _load(args.input)
    results = sweep_week(data, args.confidence, args.candidates, min_events=args.min_events, c_max=args.c_max)
    _emit(sweep_csv(results.values()), args.output)
    for res in results.values():
        if not res.is_empty:
            print(f"{res.day.label}: optimal base period {res.optimal} min", file=sys.stderr)
    return 0


def cmd_mine(args) -> int:
    data = _load(args.input)
    rules, sweeps = mine_rules(
        data, args.confidence, args.candidates,
        min_events=args.min_events, c_max=args.c_max, min_support_count=args.min_support_count,
    )
    _emit(serialize_rules(rules), args.output)
    summary = sys.stderr if args.output is None else sys.stdout
    print(f"{len(rules)} rules at confidence >= {args.confidence:.0%}", file=summary)
    for r in rules:
        print(f"  {r.notation()}  [base {sweeps[r.day].optimal} min]", file=summary)
    return 0


def cmd_eval(args) -> int:
    data = _load(args.input)
    reports = threshold_curve(
        data, args.thresholds, args.candidates,
        min_events=args.min_events, c_max=args.c_max,
        min_support_count=args.min_support_count, holdout=args.holdout,
    )
    _emit(curve_csv(reports), args.output)
    return 0


COMMANDS = {
    "ingest": cmd_ingest,
    "synth": cmd_synth,
    "sweep": cmd_sweep,
    "mine": cmd_mine,
    "eval": cmd_eval,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.ERROR, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (DataError, LogFormatError, InvalidSpec, EmptyDataset, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
