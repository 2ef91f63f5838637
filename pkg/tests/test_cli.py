"""The verify driver: suite statuses, report formats, exit codes."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from boreldouble import cli
from boreldouble.liealg import FalsificationError


def test_run_suite_a2_all_pass():
    report = cli.run_suite("A2")
    assert [s.name for s in report.suites] == list(cli.SUITE_ORDER)
    assert all(s.status == "pass" for s in report.suites)
    assert report.status == "pass" and not report.failed
    assert report.dims["center"] == 2
    assert report.dims["der_double"] == 13
    assert report.dims["diagram_group"] == 6
    # three reflections get -1, the identity and both rotations get 1
    assert sorted(v for _, v in report.lambda_table) == ["-1", "-1", "-1", "1", "1", "1"]


def test_a1_recovery_suite_is_skipped_not_failed(capsys):
    code = cli.main(["verify", "A1"])
    assert code == 0
    out = capsys.readouterr().out
    line = next(l for l in out.splitlines() if "cartan-recovery" in l)
    assert "skipped" in line and "rank 1" in line
    assert "overall: pass" in out


def test_suites_filter_runs_subset():
    report = cli.run_suite("B2", suites=["jacobi", "roots"])
    # canonical order, not the order given
    assert [s.name for s in report.suites] == ["roots", "jacobi"]


def test_der_cap_skips_the_derivation_solve(capsys):
    code = cli.main(["verify", "A2", "--der-cap", "5", "--suites", "derivations"])
    assert code == 0
    out = capsys.readouterr().out
    assert "skipped" in out and "exceeds cap 5" in out


def test_usage_errors_exit_2(capsys):
    assert cli.main(["verify", "Z9"]) == 2
    assert cli.main(["verify", "A2", "--epsilon", "1,x"]) == 2
    assert cli.main(["verify", "A2", "--suites", "nosuch"]) == 2
    assert cli.main(["diagram-aut", "H5"]) == 2
    err = capsys.readouterr().err
    assert err.count("usage error") == 4
    with pytest.raises(SystemExit):
        cli.main([])  # missing subcommand
    with pytest.raises(SystemExit):
        cli.main(["verify", "A2", "--format", "xml"])


def test_falsification_exits_1(monkeypatch, capsys):
    def boom(session, report):
        raise FalsificationError("planted witness 12345")

    monkeypatch.setitem(cli._SUITES, "roots", boom)
    code = cli.main(["verify", "A2", "--suites", "roots"])
    assert code == 1
    out = capsys.readouterr().out
    assert "fail" in out and "planted witness 12345" in out and "overall: fail" in out


def test_json_report_schema_and_status():
    report = cli.run_suite("A1", suites=["roots", "structure", "cartan-recovery"])
    payload = json.loads(cli.render_json(report))
    assert payload["schema"] == 1
    assert payload["type"] == "A1"
    assert payload["status"] == "pass"
    assert [s["name"] for s in payload["suites"]] == ["roots", "structure", "cartan-recovery"]
    assert payload["suites"][2]["status"] == "skipped"
    assert "timings" not in payload


def test_json_determinism_across_processes(tmp_path):
    inner = tmp_path / "in_process.json"
    cli.main(["verify", "A2", "--format", "json", "--seed", "7", "--out", str(inner)])
    result = subprocess.run(
        [sys.executable, "-m", "boreldouble", "verify", "A2", "--format", "json", "--seed", "7"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert result.stdout == inner.read_text(encoding="utf-8")


def test_subcommands(capsys):
    assert cli.main(["diagram-aut", "A2"]) == 0
    assert cli.main(["der-dim", "A1"]) == 0
    assert cli.main(["der-dim", "A1", "--bar"]) == 0
    assert cli.main(["lambda", "A1"]) == 0
    out = capsys.readouterr().out
    assert "order 6 (expected 6)" in out
    assert "dim Der = 5 (d-line 1, inner 3, u-type 1)" in out
    assert "dim Der = 4 (d-line 1, inner 3, u-type 0)" in out
    assert out.count("lambda = 1") == 2


def test_expected_diagram_order_table():
    cases = {
        "A1": 2, "A2": 6, "A3": 8, "A4": 10,
        "B2": 2, "B3": 2, "C3": 2, "D4": 24, "D5": 8,
        "E6": 6, "E7": 2, "E8": 1, "F4": 1, "G2": 1,
    }
    for name, order in cases.items():
        assert cli.expected_diagram_order(cli.SimpleType.parse(name)) == order


def test_text_report_has_one_line_per_suite():
    report = cli.run_suite("A1", suites=["roots", "jacobi"], epsilons=[0, 1])
    text = cli.render_text(report)
    lines = text.splitlines()
    assert lines[0] == "type A1"
    assert lines[1].split() == ["roots", "pass"] + lines[1].split()[2:]
    assert "epsilon in {0, 1}" in lines[2]
    assert lines[-1] == "overall: pass"
