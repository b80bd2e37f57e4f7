import json

import pytest

from smalldiv import artifacts
from smalldiv.experiments import ExperimentConfig, run_critical_experiment


def test_fmt18_roundtrips():
    for x in (0.1, 1 / 3, 2.0**-52, 1e300, -7.25, 0.0):
        assert float(artifacts.fmt18(x)) == x


def test_fmt18_rejects_nonfinite():
    with pytest.raises(ValueError):
        artifacts.fmt18(float("nan"))
    with pytest.raises(ValueError):
        artifacts.fmt18(float("inf"))


def test_csv_layout(tmp_path):
    path = tmp_path / "x.csv"
    artifacts.write_csv(path, ("a", "b"), [(1, 0.5), (2, None)],
                        {"seed": 3, "flag": True})
    lines = path.read_text().splitlines()
    assert lines[0] == "# flag=true seed=3"
    assert lines[1] == "a,b"
    assert lines[2] == "1,0.5"
    assert lines[3] == "2,"


def test_json_stringifies_floats(tmp_path):
    path = tmp_path / "x.json"
    artifacts.write_json(path, {"v": 0.1, "n": 4, "ok": False}, {"seed": 0})
    body = artifacts.load_json(path)
    assert body["v"] == artifacts.fmt18(0.1)
    assert body["n"] == 4
    assert body["ok"] is False
    # first line is the config comment
    assert path.read_text().splitlines()[0].startswith("# ")


def test_byte_identity(tmp_path):
    cfg = ExperimentConfig(samples=4, seed=9, c_list=(0.5, 1.0), q_max=3000)
    meta = {"seed": 9, "samples": 4}
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    artifacts.write_summary_csv(p1, run_critical_experiment(cfg), meta)
    artifacts.write_summary_csv(p2, run_critical_experiment(cfg), meta)
    assert p1.read_bytes() == p2.read_bytes()


def test_summary_rows_shape():
    cfg = ExperimentConfig(samples=2, seed=9, c_list=(0.5, 1.0), q_max=1000)
    rows = artifacts.summary_rows(run_critical_experiment(cfg))
    assert len(rows) == 4  # samples x c values
    assert rows[0][0] == 0 and rows[-1][0] == 1
