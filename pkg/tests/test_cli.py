"""Command-line surface: exit codes, determinism, output formats."""

import json

import pytest

from symsq.cli import (
    EXIT_BAD_RANGE,
    EXIT_INVALID_STATE,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_VERIFY_FAIL,
    main,
)
from symsq.models import SWEEP_FIELDS


@pytest.fixture
def bell_file(tmp_path):
    path = tmp_path / "bell.json"
    path.write_text(json.dumps({"special": {"a": 0, "b": 0, "c": 0.5, "d": 0}}))
    return str(path)


@pytest.fixture
def mixed_file(tmp_path):
    """Maximally mixed state on the triplet subspace (separable)."""
    path = tmp_path / "mixed.json"
    path.write_text(json.dumps(
        {"special": {"a": 1 / 3, "b": 0, "c": 1 / 6, "d": 1 / 3}}))
    return str(path)


def test_analyze_bell_json(bell_file, capsys):
    assert main(["analyze", bell_file, "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["symmetric"] is True
    assert abs(report["invariants"]["I1"] + 1.0) < 1e-12
    assert report["classification"] == "I3_zero_I1_negative"
    assert report["entangled"] is True
    assert report["xi_sq"] is None  # zero mean spin


def test_analyze_maximally_mixed(mixed_file, capsys):
    assert main(["analyze", mixed_file, "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["entangled"] is False
    assert not any(report["flags"].values())


def test_analyze_text_and_json_values_agree(bell_file, capsys):
    main(["analyze", bell_file, "--format", "json"])
    js = json.loads(capsys.readouterr().out)
    main(["analyze", bell_file, "--format", "text"])
    text = capsys.readouterr().out
    line = next(l for l in text.splitlines() if l.startswith("invariants.I1 ="))
    assert float(line.split("=")[1]) == js["invariants"]["I1"]


def test_analyze_collective_rows(bell_file, capsys):
    main(["analyze", bell_file, "--N", "2,6", "--format", "json"])
    report = json.loads(capsys.readouterr().out)
    assert [row["N"] for row in report["collective"]] == [2, 6]
    assert all(row["entangled"] for row in report["collective"])


def test_analyze_invalid_state_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "bloch": {"s": [0, 0, 2], "r": [0, 0, 2],
                  "T": [[1, 0, 0], [0, 1, 0], [0, 0, -1]]}}))
    assert main(["analyze", str(path)]) == EXIT_INVALID_STATE


def test_analyze_parse_error_exit_code(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert main(["analyze", str(path)]) == EXIT_PARSE_ERROR
    path.write_text(json.dumps({"wrong": 1}))
    assert main(["analyze", str(path)]) == EXIT_PARSE_ERROR


def test_sweep_csv_schema(capsys):
    assert main(["sweep", "--model", "ku", "--N", "4",
                 "--param-range", "0:3.14:5"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == ",".join(SWEEP_FIELDS)
    assert len(lines) == 6
    assert lines[1].startswith("ku,4,0,")


def test_sweep_deterministic(capsys):
    args = ["sweep", "--model", "atomic", "--N", "4,6", "--param-range", "0.1:0.9:7"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first


def test_sweep_csv_round_trip(capsys):
    main(["sweep", "--model", "ku", "--N", "4", "--param-range", "0:1:4"])
    lines = capsys.readouterr().out.strip().splitlines()
    from symsq.models import ku_pair
    for line in lines[1:]:
        cells = line.split(",")
        _, _, inv = ku_pair(4, float(cells[2]))
        assert float(cells[7]) == inv.I5  # exact decimal round trip


def test_sweep_json_format(capsys):
    main(["sweep", "--model", "dicke", "--N", "4", "--format", "json"])
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 5  # M = -2..2
    assert rows[2]["param"] == 0.0
    assert rows[2]["branch"] == "I3_zero_I1_negative"


def test_sweep_bad_range_exit_code(capsys):
    assert main(["sweep", "--model", "ku", "--N", "4",
                 "--param-range", "1:0:5"]) == EXIT_BAD_RANGE
    assert main(["sweep", "--model", "ku", "--N", "4",
                 "--param-range", "0:1"]) == EXIT_BAD_RANGE
    assert main(["sweep", "--model", "atomic", "--N", "4"]) == EXIT_BAD_RANGE


def test_sweep_to_file(tmp_path):
    out = tmp_path / "rows.csv"
    assert main(["sweep", "--model", "ku", "--N", "4",
                 "--param-range", "0:1:3", "--out", str(out)]) == EXIT_OK
    assert out.read_text().startswith(",".join(SWEEP_FIELDS))


def test_verify_quick_passes(capsys):
    assert main(["verify", "--level", "quick", "--seed", "42"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.count("PASS") == 4 and "FAIL" not in out


def test_verify_failure_hook(capsys):
    assert main(["verify", "--level", "quick", "--seed", "42",
                 "--tolerance-scale", "1e-30"]) == EXIT_VERIFY_FAIL
    assert "FAIL" in capsys.readouterr().out


def test_symsq_tol_env(monkeypatch, bell_file, capsys):
    monkeypatch.setenv("SYMSQ_TOL", "3")
    main(["analyze", bell_file, "--format", "json"])
    report = json.loads(capsys.readouterr().out)
    # with a huge tolerance the Bell state no longer counts as entangled
    assert report["entangled"] is False
    monkeypatch.setenv("SYMSQ_TOL", "not-a-number")
    assert main(["analyze", bell_file]) == EXIT_INVALID_STATE
