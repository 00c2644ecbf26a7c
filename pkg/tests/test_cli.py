import json

import pytest
from click.testing import CliRunner

from appnext.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, [str(a) for a in args])


def test_help_lists_defaults(runner):
    out = " ".join(invoke(runner, "replay", "--help").output.split())
    for needed in ("0.1", "300000", "default: 6", "default: 50", "--reward-scope", "--dcg-variant", "--predictors"):
        assert needed in out


def test_synth_replay_metrics(runner, tmp_path):
    events = tmp_path / "ev.csv"
    r = invoke(runner, "synth", "--out", events, "--n-apps", 4, "--n-events", 800, "--seed", 3)
    assert r.exit_code == 0, r.output
    assert events.read_text().startswith("user_id,timestamp_ms,app_name\n")

    out = tmp_path / "run"
    r = invoke(runner, "replay", "--input", events, "--out", out, "--k", 2, "--seed", 3,
               "--delta-ms", "inf", "--reward-scope", "always-actual")
    assert r.exit_code == 0, r.output
    summary = json.loads((out / "summary.json").read_text())
    assert summary["seed"] == 3 and summary["config"]["delta_ms"] is None

    rescored = tmp_path / "re"
    r = invoke(runner, "metrics", "--input", out / "records.csv", "--out", rescored)
    assert r.exit_code == 0, r.output
    again = json.loads((rescored / "summary.json").read_text())
    assert again["predictors"] == summary["predictors"]
    assert (rescored / "timeseries.csv").read_text() == (out / "timeseries.csv").read_text()


def test_synth_jsonl_with_matrix(runner, tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps([[0.0, 1.0], [1.0, 0.0]]))
    out = tmp_path / "ev.jsonl"
    r = invoke(runner, "synth", "--out", out, "--format", "jsonl", "--matrix", m, "--n-events", 10)
    assert r.exit_code == 0, r.output
    lines = [json.loads(x) for x in out.read_text().splitlines()]
    assert len(lines) == 10 and set(lines[0]) == {"user_id", "timestamp_ms", "app_name"}


def test_synth_bad_matrix(runner, tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps([[0.5, 0.4], [1.0, 0.0]]))
    r = invoke(runner, "synth", "--out", tmp_path / "x.csv", "--matrix", m)
    assert r.exit_code == 1 and "row 0" in r.output


def test_schema_error_exit_code(runner, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("user,timestamp_ms,app_name\nu,1,a\n")
    r = invoke(runner, "replay", "--input", bad, "--out", tmp_path / "o")
    assert r.exit_code == 1
    assert "user_id" in r.output
    assert not (tmp_path / "o").exists()


def test_bad_delta(runner, tmp_path):
    f = tmp_path / "e.csv"
    f.write_text("user_id,timestamp_ms,app_name\n")
    r = invoke(runner, "replay", "--input", f, "--out", tmp_path / "o", "--delta-ms", "-3")
    assert r.exit_code == 1


def test_predictor_subset(runner, tmp_path):
    f = tmp_path / "e.csv"
    f.write_text("user_id,timestamp_ms,app_name\nu,0,a\nu,5,b\nu,9,a\n")
    r = invoke(runner, "replay", "--input", f, "--out", tmp_path / "o", "--predictors", "fala,mru")
    assert r.exit_code == 0, r.output
    summary = json.loads((tmp_path / "o" / "summary.json").read_text())
    assert list(summary["predictors"]) == ["FALA", "MRU"]
