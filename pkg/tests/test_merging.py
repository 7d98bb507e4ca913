import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from silentmine.calllog import Day
from silentmine.merging import merge_dominant_slices, mine_day
from silentmine.slicing import TimeSlice, bin_activities, generate_time_slices, mark_dominance
from silentmine.synthgen import PlantedPeriod, SynthSpec, generate

from builders import dataset
from oracles import brute_mine_day, run_length_runs


def _slices(pattern, start=600, width=10, day=Day.MONDAY):
    return [
        TimeSlice(day, start + i * width, start + (i + 1) * width, reject=int(flag), dominant=flag)
        for i, flag in enumerate(pattern)
    ]


def test_merge_pattern_against_run_length_oracle():
    pattern = [False, True, True, False, True]
    slices = _slices(pattern)
    expected = [(slices[a].start, slices[b - 1].end) for a, b in run_length_runs(pattern)]
    assert expected == [(610, 630), (640, 650)]
    assert [(p.start, p.end) for p in merge_dominant_slices(slices)] == expected


def test_merge_nothing_dominant():
    assert merge_dominant_slices(_slices([False] * 5)) == []
    assert merge_dominant_slices([]) == []


def test_single_dominant_slice_becomes_period():
    (p,) = merge_dominant_slices(_slices([True]))
    assert (p.start, p.end, p.support_count) == (600, 610, 1)


def test_merge_sums_counts_and_recomputes_confidence():
    slices = [
        TimeSlice(Day.MONDAY, 0, 10, accept=1, reject=4, dominant=True),
        TimeSlice(Day.MONDAY, 10, 20, reject=1, missed=1, dominant=True),
    ]
    (p,) = merge_dominant_slices(slices, t=0.8)
    assert (p.accept, p.reject, p.missed) == (1, 5, 1)
    assert p.confidence == 6 / 7
    assert p.threshold_met


def test_merge_does_not_bridge_gaps():
    slices = [
        TimeSlice(Day.MONDAY, 0, 10, reject=1, dominant=True),
        TimeSlice(Day.MONDAY, 20, 30, reject=1, dominant=True),
    ]
    assert [(p.start, p.end) for p in merge_dominant_slices(slices)] == [(0, 10), (20, 30)]


def test_merge_rejects_mixed_days():
    with pytest.raises(ValueError):
        merge_dominant_slices(_slices([True]) + _slices([True], start=700, day=Day.TUESDAY))


def test_mine_day_recovers_planted_block():
    spec = SynthSpec(
        weeks=8,
        planted=(PlantedPeriod(Day.MONDAY, 860, 960, 1.0),),
        background_rate=2.0,
        background_unavail_fraction=0.0,
        seed=11,
    )
    periods = mine_day(generate(spec), Day.MONDAY, 20, 0.8)
    assert [(p.start, p.end) for p in periods] == [(860, 960)]


def test_mine_day_only_outgoing():
    data = dataset(*[(0, m, "outgoing") for m in range(0, 1440, 7)])
    assert mine_day(data, Day.MONDAY, 10, 0.8) == []


def test_mine_day_full_confidence_splits_at_accept():
    events = [(0, m, "reject") for m in range(600, 660, 3)] + [(0, 625, "accept")]
    data = dataset(*events)
    got = [(p.start, p.end) for p in mine_day(data, Day.MONDAY, 10, 1.0)]
    brute = brute_mine_day([(m, 0 if k == "accept" else 1) for _, m, k in events], 10, 1.0)
    assert got == [(s, e) for s, e, *_ in brute] == [(600, 620), (630, 660)]


def test_mine_day_matches_composed_pipeline(kernel_path):
    rng = random.Random(5)
    kinds = ["accept", "reject", "missed", "outgoing"]
    data = dataset(*[(rng.randrange(2), rng.randrange(1440), rng.choice(kinds)) for _ in range(300)])
    for base in (7, 15, 60):
        composed = merge_dominant_slices(
            mark_dominance(bin_activities(data, Day.MONDAY, generate_time_slices(base, Day.MONDAY)), 0.6),
            t=0.6,
        )
        assert mine_day(data, Day.MONDAY, base, 0.6) == composed


slice_flags = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=40)


def _marked(counts, t):
    slices = [TimeSlice(Day.MONDAY, 10 * i, 10 * (i + 1), a, r, m) for i, (a, r, m) in enumerate(counts)]
    return mark_dominance(slices, t)


@settings(max_examples=300)
@given(slice_flags, st.floats(0.05, 1.0))
def test_aggregate_confidence_never_drops_below_threshold(counts, t):
    # a merged ratio is a mediant of ratios that each reach t
    for p in merge_dominant_slices(_marked(counts, t), t=t):
        assert p.threshold_met
        assert p.confidence >= t
