"""Command-line front end: exit codes, output formats, determinism."""

import json

import pytest

from schwarzian_lab.cli import main


def run(args):
    return main(args)


def test_expand_text_golden(capsys):
    code = run(["expand", "--series", "A", "--n", "4"])
    out = capsys.readouterr().out
    assert code == 0
    assert "u4/u1 - 6*u3*u2/u1^2 + 6*u2^3/u1^3" in out


def test_expand_json_schema(capsys):
    code = run(["expand", "--series", "B", "--n", "5", "--format", "json"])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["schema"] == "v1"
    assert rep["inputs"]["series"] == "B"
    assert rep["weights"] == [4]


def test_verify_exit_codes(capsys):
    assert run(["verify", "affine", "--trials", "5"]) == 0
    capsys.readouterr()
    # an absurd tolerance forces a failed check -> exit 1
    assert run(["verify", "affine", "--trials", "5", "--tol", "1e-30"]) == 1


def test_unknown_function_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["norm", "--function", "no-such-map"])
    assert exc.value.code == 2
    assert "error" in capsys.readouterr().err


def test_csv_requires_tabular_report(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["expand", "--series", "A", "--n", "3", "--format", "csv"])
    assert exc.value.code == 2


def test_bound_csv_table(capsys):
    code = run(["bound", "--series", "A", "--n", "3", "--function", "koebe", "--format", "csv"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "function,series,n,estimate,bound,margin"
    assert lines[1].startswith("koebe,A,3,")


def test_json_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(["verify", "covariance", "--series", "B", "--trials", "10", "--format", "json", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["ok"] is True
    assert rep["max_relerr"] < 1e-9


def test_complex_values_encode_as_pairs(tmp_path):
    out = tmp_path / "aw.json"
    assert run(["aw", "--phi", "identity", "--z", "2+0j", "--format", "json", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["schema"] == "v1"
    val = rep["section_value"]
    assert isinstance(val, list) and len(val) == 2
    assert all(isinstance(x, float) for x in val)


def test_solve_default_ok(capsys):
    assert run(["solve", "ode"]) == 0
    capsys.readouterr()
    assert run(["solve", "homog-b", "--n", "4"]) == 0
    capsys.readouterr()
    assert run(["solve", "homog-a", "--n", "5", "--poly", "0.5,0.25"]) == 0


def test_theta_report(capsys):
    code = run(["theta", "--radius", "6", "--format", "json"])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["automorphy_residual"] <= rep["automorphy_bound"]
    assert rep["ball_size"] == 13


def test_bad_group_descriptor(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["theta", "--group", '{"kind": "NOPE"}'])
    assert exc.value.code == 2
