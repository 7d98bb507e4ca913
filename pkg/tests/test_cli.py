import json

import pytest

from silentmine.calllog import read_log
from silentmine.cli import main
from silentmine.evaluation import curve_csv, threshold_curve
from silentmine.rulegen import mine_rules, serialize_rules

from conftest import FIXTURES


@pytest.fixture
def log_path(tmp_path):
    path = tmp_path / "log.csv"
    assert main(["synth", "--spec", str(FIXTURES / "planted_friday.json"), "--output", str(path)]) == 0
    return path


def test_synth_matches_fixture(log_path):
    import gzip

    assert log_path.read_bytes() == gzip.decompress((FIXTURES / "planted_friday_seed00.csv.gz").read_bytes())


def test_synth_seed_override(tmp_path, log_path):
    out = tmp_path / "s3.csv"
    assert main(["synth", "--spec", str(FIXTURES / "planted_friday.json"), "--seed", "3", "-o", str(out)]) == 0
    assert out.read_bytes() != log_path.read_bytes()


def test_mine_writes_rules_and_summary(log_path, tmp_path, capsys):
    out = tmp_path / "rules.json"
    assert main(["mine", "--input", str(log_path), "--confidence", "0.8", "--output", str(out)]) == 0
    rules, _ = mine_rules(read_log(log_path), 0.8)
    assert out.read_bytes() == serialize_rules(rules)
    summary = capsys.readouterr().out
    assert "DayTime → Friday [" in summary
    assert "⇒ RingerMode → Silent (Conf=" in summary


def test_mine_to_stdout(log_path, capsys):
    assert main(["mine", "-i", str(log_path)]) == 0
    captured = capsys.readouterr()
    assert isinstance(json.loads(captured.out), list)
    assert "rules at confidence" in captured.err


def test_eval_matches_library(log_path, tmp_path):
    out = tmp_path / "curve.csv"
    assert main(["eval", "-i", str(log_path), "--thresholds", "1.0,0.8,0.6", "-o", str(out)]) == 0
    text = out.read_text()
    assert len(text.splitlines()) == 4
    assert text == curve_csv(threshold_curve(read_log(log_path), [1.0, 0.8, 0.6]))


def test_sweep_csv(log_path, tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "-i", str(log_path), "-t", "0.8", "--candidates", "10,20,30", "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "base_period_min,day,applicability"
    assert {line.split(",")[0] for line in lines[1:]} == {"10", "20", "30"}


def test_ingest_reports_malformed_rows(tmp_path, capsys):
    src = tmp_path / "bad.csv"
    src.write_text("timestamp,call_type,duration_sec\n2015-04-12T12:10:20,INCOMING,125\n2015-04-12T12:11:20,INCOMING,-5\n")
    out = tmp_path / "clean.csv"
    assert main(["ingest", "-i", str(src), "-o", str(out)]) == 1
    err = capsys.readouterr().err
    assert f"{src}:3: negative duration" in err
    assert out.read_text().count("\n") == 2


def test_ingest_clean(log_path, capsys):
    assert main(["ingest", "-i", str(log_path)]) == 0


def test_missing_input_names_path(tmp_path, capsys):
    missing = tmp_path / "nope.csv"
    assert main(["mine", "--input", str(missing)]) == 1
    assert str(missing) in capsys.readouterr().err


def test_fatal_format_exit_1(tmp_path, capsys):
    src = tmp_path / "noheader.csv"
    src.write_text("2015-04-12T12:10:20,INCOMING,125\n")
    assert main(["mine", "-i", str(src)]) == 1
    assert "header" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["mine"],
        ["mine", "-i", "x.csv", "--confidence", "1.5"],
        ["mine", "-i", "x.csv", "--candidates", "0,10"],
        ["eval", "-i", "x.csv", "--holdout", "1.0"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
