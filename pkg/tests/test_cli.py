from __future__ import annotations

import json

from liftings.cli import main

from conftest import FINAL_I, IPRIME


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_gb(capsys):
    rc, out, _ = run(capsys, "gb", IPRIME)
    assert rc == 0
    assert "x1^3" in out and "x1^2*x2" in out


def test_gb_json(capsys):
    rc, out, _ = run(capsys, "gb", IPRIME, "--json", "-")
    assert rc == 0
    d = json.loads(out)
    assert d["schema_version"] == 1


def test_hilbert(capsys):
    rc, out, _ = run(capsys, "hilbert", IPRIME, "--nvars", "4", "--upto", "4")
    assert rc == 0 and "2*t + 3" in out


def test_qs_check(capsys):
    assert run(capsys, "qs-check", "x0^2, x0*x1, x0*x2, x1^2*x2, x1^3")[0] == 0


def test_exit_codes(capsys):
    assert run(capsys, "gb", "x0 + ")[0] == 2
    assert run(capsys, "gb", "x0 + 1")[0] == 2  # not homogeneous
    assert run(capsys, "enumerate", "x0, x1^3, x1^2*x2", "--hp", "2t+2")[0] == 3
    assert run(capsys, "lifting-gs", "x0, x1^2", "--hp", "3t+1")[0] == 3
    assert run(capsys, "member", "x0", "--chart", "/nonexistent.json")[0] == 2


def test_enumerate_double_point(capsys):
    rc, out, _ = run(capsys, "enumerate", "x0, x1^2", "--hp", "2t+2")
    assert rc == 0
    assert "(x1^3, x1^2*x2, x0)" in out and "(x0^2, x0*x1, x1^2, x0*x2)" in out


def test_verify_false_with_notes(capsys):
    rc, out, _ = run(capsys, "verify", "x0^2 + x3^2, x0*x1, x0*x2, x1^2, x1*x2", "--against", "x0, x1")
    assert rc == 0
    assert "lifting: false" in out and "not saturated" in out


def test_verify_true(capsys):
    rc, out, _ = run(capsys, "verify", FINAL_I.format(e=1), "--against", IPRIME)
    assert rc == 0 and "lifting: true" in out


def test_chart_file_roundtrip(capsys, tmp_path):
    path = tmp_path / "charts.json"
    rc, _, _ = run(capsys, "lifting-gs", "x0, x1^2", "--hp", "2t+2", "--json", str(path), "--self-check")
    assert rc == 0
    d = json.loads(path.read_text())
    assert d["schema_version"] == 1 and len(d["charts"]) == 2
    rc, out, _ = run(capsys, "member", "x0, x1^3, x1^2*x2", "--chart", str(path), "--json", "-")
    assert rc == 0
    verdicts = [c["member"] for c in json.loads(out)["results"]]
    assert verdicts == [True, False]


def test_numeric_marked_chart_file(capsys, tmp_path):
    path = tmp_path / "marked.json"
    assert run(capsys, "lifting-ms", "x0, x1^2", "--hp", "2t+2", "--numeric", "--json", str(path))[0] == 0
    rc, out, _ = run(capsys, "member", "x0 + x3, x1^3, x1^2*x2", "--chart", str(path), "--index", "1")
    assert rc == 0 and "member" in out and "not a member" not in out


def test_running_example_charts(capsys, tmp_path):
    path = tmp_path / "gs.json"
    rc, out, _ = run(capsys, "lifting-gs", IPRIME, "--hp", "t^2+4t+1", "--json", str(path))
    assert rc == 0
    charts = json.loads(path.read_text())["charts"]
    assert len(charts) == 5
    assert sum(1 for c in charts if c["empty"]) == 2
    rc, out, _ = run(capsys, "member", FINAL_I.format(e=1), "--chart", str(path), "--json", "-")
    # in(I) = J^(3): a member of that stratum only (not of the J^(2) stratum)
    assert [r["member"] for r in json.loads(out)["results"]] == [False, False, False, False, True]
