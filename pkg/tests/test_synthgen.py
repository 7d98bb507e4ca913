import gzip
import json

import pytest

from silentmine.calllog import Activity, CallType, Day, parse_log, serialize_log
from silentmine.rulegen import mine_rules
from silentmine.synthgen import InvalidSpec, PlantedPeriod, SynthSpec, generate, generate_records, load_spec

from conftest import ACCEPTANCE_SEEDS, FIXTURES


def friday(rate=1.0):
    return PlantedPeriod(Day.FRIDAY, 975, 1050, rate)


def test_zero_weeks_is_empty():
    assert generate(SynthSpec(weeks=0, planted=(friday(),))).record_count == 0


def test_same_seed_same_bytes():
    spec = SynthSpec(weeks=3, planted=(friday(0.9),), seed=123)
    assert serialize_log(generate(spec)) == serialize_log(generate(spec))
    other = SynthSpec(weeks=3, planted=(friday(0.9),), seed=124)
    assert serialize_log(generate(spec)) != serialize_log(generate(other))


@pytest.mark.parametrize("seed", ACCEPTANCE_SEEDS)
def test_committed_fixtures_reproduce(seed):
    base = load_spec(FIXTURES / "planted_friday.json")
    spec = SynthSpec.from_dict({**base.to_dict(), "seed": seed})
    committed = gzip.decompress((FIXTURES / f"planted_friday_seed{seed:02d}.csv.gz").read_bytes())
    assert serialize_log(generate_records(spec)) == committed


def test_overlapping_plants_rejected():
    with pytest.raises(InvalidSpec):
        SynthSpec(weeks=1, planted=(friday(), PlantedPeriod(Day.FRIDAY, 1000, 1100, 0.5)))
    # touching is fine, as is the same span on another day
    SynthSpec(weeks=1, planted=(friday(), PlantedPeriod(Day.FRIDAY, 1050, 1100, 0.5)))
    SynthSpec(weeks=1, planted=(friday(), PlantedPeriod(Day.MONDAY, 975, 1050, 0.5)))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"weeks": -1},
        {"weeks": 1, "background_rate": -0.5},
        {"weeks": 1, "background_unavail_fraction": 1.5},
        {"weeks": 1, "planted": (PlantedPeriod(Day.FRIDAY, 975, 975, 0.5),)},
        {"weeks": 1, "planted": (PlantedPeriod(Day.FRIDAY, 975, 1000, 1.2),)},
        {"weeks": 1, "seed": -1},
    ],
)
def test_invalid_specs(kwargs):
    with pytest.raises(InvalidSpec):
        SynthSpec(**kwargs)


def test_from_dict_errors():
    with pytest.raises(InvalidSpec):
        SynthSpec.from_dict({"weeks": 2, "planted": [{"day": "Friday", "start": "16:15"}]})
    with pytest.raises(InvalidSpec):
        SynthSpec.from_dict({"weeks": 2, "colour": "blue"})


def test_spec_json_round_trip(tmp_path):
    spec = SynthSpec(weeks=2, planted=(friday(0.8),), seed=7)
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec.to_dict()))
    assert load_spec(path) == spec


def test_generated_records_pass_validation():
    spec = SynthSpec(weeks=4, planted=(friday(0.7),), background_unavail_fraction=0.3, seed=5)
    data = generate(spec)
    reparsed = parse_log(serialize_log(data))
    assert reparsed.errors == ()
    assert reparsed == data
    for rec, act in data.records:
        if act is Activity.ACCEPT:
            assert 10 <= rec.duration <= 600
        else:
            assert rec.duration == 0
    assert {rec.raw_type for rec, _ in data.records} <= {CallType.INCOMING, CallType.MISSED}


def test_planted_friday_recovered_at_full_confidence():
    spec = SynthSpec(weeks=8, planted=(friday(1.0),), background_rate=0.0, seed=2)
    rules, sweeps = mine_rules(generate(spec), 1.0)
    (rule,) = rules
    base = sweeps[Day.FRIDAY].optimal
    assert rule.day is Day.FRIDAY
    assert rule.start <= 975 + base and rule.end >= 1050 - base
    assert abs(rule.start - 975) <= base and abs(rule.end - 1050) <= base
