import json
from pathlib import Path

import pytest

from metaplectic.cli import run

GOLDEN = Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "cli_outputs.json").read_text())


@pytest.fixture
def in_golden(monkeypatch):
    monkeypatch.chdir(GOLDEN)


def _run(argv, capsys):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_output(name, in_golden, capsys):
    case = CASES[name]
    code, out, _ = _run(case["argv"], capsys)
    assert code == case["exit"]
    assert out == case["stdout"]


def test_verify_is_byte_deterministic(capsys):
    argv = ["verify", "hilbert", "--trials", "4", "--seed", "7", "--json"]
    first = _run(argv, capsys)
    second = _run(argv, capsys)
    assert first == second
    assert first[0] == 0
    lines = [json.loads(s) for s in first[1].splitlines()]
    assert {x["check"] for x in lines} == {"hilbert.square-classes", "hilbert.conic", "hilbert.reciprocity"}
    assert all(x["status"] == "pass" and "wall_time" not in x for x in lines)


def test_verify_timing_adds_wall_time(capsys):
    code, out, _ = _run(["verify", "hilbert", "--trials", "2", "--json", "--timing"], capsys)
    assert code == 0
    assert all("wall_time" in json.loads(s) for s in out.splitlines())


def test_verify_table(capsys):
    code, out, _ = _run(["verify", "maslov", "--trials", "2"], capsys)
    assert code == 0
    assert len(out.splitlines()) == 3
    assert all(s.startswith("PASS") for s in out.splitlines())


def test_weil_rank1_reports_table(capsys):
    code, out, _ = _run(["weil", "--p", "3", "--diag", "2"], capsys)
    obj = json.loads(out)
    assert code == 0
    assert obj["value"] == obj["rank1_table"]


def test_real_place(capsys):
    code, out, _ = _run(["hilbert", "--p", "real", "--a", "-1", "--b", "-1"], capsys)
    assert (code, json.loads(out)) == (0, {"value": -1})


@pytest.mark.parametrize(
    "argv, path",
    [
        (["hilbert", "--p", "5", "--a", "x", "--b", "1"], "a"),
        (["hilbert", "--p", "five", "--a", "1", "--b", "1"], "p"),
        (["weil", "--p", "3", "--form", "{not json"], "form"),
        (["weil", "--p", "3", "--form", '{"gram": [[1, 2], [3]]}'], "form.gram[1]"),
        (["theta", "--p", "3", "--n", "1", "--matrix", "@does_not_exist.json"], "matrix"),
        (["delta0", "--pair", '{"place": 3, "gamma1": {"a": []}}'], "pair.gamma1.factors"),
        (["verify", "hilbert", "--trials", "0"], "trials"),
    ],
)
def test_input_errors_exit_2(argv, path, capsys):
    code, out, err = _run(argv, capsys)
    assert code == 2
    assert out == ""
    obj = json.loads(err)
    assert obj["error"] == "input"
    assert obj["path"] == path


@pytest.mark.parametrize(
    "argv, path",
    [
        (["hilbert", "--p", "5", "--a", "0", "--b", "1"], "a"),
        (["hilbert", "--p", "9", "--a", "1", "--b", "1"], "p"),
        (["weil", "--p", "3", "--diag", "1,0"], "diag"),
        (["theta", "--p", "3", "--n", "1", "--matrix", "[[1,0],[0,1]]"], "matrix"),
        (["theta", "--p", "3", "--n", "1", "--matrix", "[[1,1],[0,1]]", "--mode", "ratio"], "matrix"),
        (["theta", "--p", "3", "--n", "2", "--matrix", "[[1,0],[0,1]]"], "matrix"),
        (["transfer", "--p", "5", "--pair", "@pair_phase.json"], "p"),
        (["transfer", "--p", "5", "--pair", "@pair_regular.json", "--matrix", '{"x1": [[1, 0], [0, 1]], "x2": null}'], "matrix"),
    ],
)
def test_precondition_errors_exit_3(argv, path, in_golden, capsys):
    code, out, err = _run(argv, capsys)
    assert code == 3
    assert out == ""
    obj = json.loads(err)
    assert obj["error"] == "precondition"
    assert obj["path"] == path


def test_unknown_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        run(["nope"])
    assert e.value.code == 2
