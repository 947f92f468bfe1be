"""End-to-end tests for the command-line interface."""

import json
import textwrap

import pytest

from periodlab.cli import (
    CATALOG_ENV,
    main,
    run_classify,
    run_conjecture_sweep,
    run_verify_matrices,
)
from periodlab.reporting import ERROR, PASS

USER_CATALOG = textwrap.dedent("""\
    [cuspidal.tau]
    dim = 2
    type = symplectic
    model = q8

    [cuspidal.one]
    dim = 1
    type = orthogonal
    model = trivial
    """)


# -- classify ------------------------------------------------------------------


def test_classify_elliptic_parameter_exits_zero(capsys):
    assert main(["classify", "q8 (+) q8b"]) == 0
    out = capsys.readouterr().out
    assert "[PASS ]" in out
    assert "exit code: 0" in out


def test_classify_reports_failed_rule(capsys):
    assert main(["classify", "St(2,q8)"]) == 1
    out = capsys.readouterr().out
    assert "[FAIL ]" in out
    assert "not linearly distinguished" in out


def test_classify_parse_error_exits_two(capsys):
    assert main(["classify", "St(3,q8"]) == 2
    out = capsys.readouterr().out
    assert "1:7" in out
    assert "expected ')'" in out


def test_classify_unknown_label_exits_three(capsys):
    assert main(["classify", "St(2,zzz)"]) == 3
    out = capsys.readouterr().out
    assert "unknown cuspidal label" in out


def test_classify_missing_catalog_file_exits_three(tmp_path, capsys):
    missing = tmp_path / "nope.ini"
    assert main(["classify", "q8", "--catalog", str(missing)]) == 3


def test_classify_twisted_parameter_fails_tempered(capsys):
    report = run_classify("q8 * nu^1/2")
    by_name = {c.name: c.verdict for c in report.checks}
    assert by_name["tempered"] == "fail"
    assert report.exit_code == 1


def test_classify_undistinguishable_segment_is_a_failure_with_reason():
    report = run_classify("St(3,trivial) (+) trivial")
    segment_checks = [c for c in report.checks
                      if c.name.startswith("segment[")]
    assert any("odd dimension" in c.details for c in segment_checks)
    assert report.exit_code == 1


def test_classify_with_user_catalog(tmp_path, capsys):
    path = tmp_path / "user.ini"
    path.write_text(USER_CATALOG, encoding="utf-8")
    assert main(["classify", "tau", "--catalog", str(path), "--oracle"]) == 0
    out = capsys.readouterr().out
    assert "oracle agreement: True" in out


def test_classify_reads_catalog_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "user.ini"
    path.write_text(USER_CATALOG, encoding="utf-8")
    monkeypatch.setenv(CATALOG_ENV, str(path))
    report = run_classify("tau (+) St(2,one)")
    assert report.exit_code == 0
    assert str(path) in report.checks[0].details


def test_classify_golden_json(capsys):
    assert main(["classify", "St(3,q8)", "--oracle", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {
        "input": "St(3,q8)",
        "checks": [
            {"name": "parse", "verdict": "pass",
             "theorem_tag": "rule:grammar",
             "details": "1 segment(s); catalog: built-in"},
            {"name": "dimension", "verdict": "pass",
             "theorem_tag": "rule:rds-construction",
             "details": "dim = 6"},
            {"name": "tempered", "verdict": "pass",
             "theorem_tag": "rule:tempered",
             "details": "all twists zero"},
            {"name": "segment[0]", "verdict": "pass",
             "theorem_tag": "rule:linear-distinction",
             "details": "St(3,q8): symplectic type; linearly distinguished"},
            {"name": "sp-image", "verdict": "pass",
             "theorem_tag": "rule:sp-image",
             "details": "symplectic pairing exists"},
            {"name": "x-elliptic", "verdict": "pass",
             "theorem_tag": "rule:elliptic-multiplicity-free",
             "details": "multiplicity-free symplectic-type decomposition"},
            {"name": "oracle-form", "verdict": "pass",
             "theorem_tag": "oracle:invariant-form",
             "details": "nondegenerate skew form found; "
                        "max |g^T J g - J| = 0.00e+00"},
            {"name": "oracle-isotropy", "verdict": "pass",
             "theorem_tag": "oracle:isotropy",
             "details": "no invariant isotropic subspace"},
        ],
        "oracle_agreement": True,
        "exit_code": 0,
    }


# -- verify-matrices --------------------------------------------------------------


def test_verify_matrices_small_bounds(capsys):
    assert main(["verify-matrices", "--max-n", "3", "--max-k", "4"]) == 0
    out = capsys.readouterr().out
    assert "6 even partitions" in out
    assert "k=4:skew" in out


def test_verify_matrices_default_counts():
    report = run_verify_matrices()
    by_name = {c.name: c for c in report.checks}
    assert report.exit_code == 0
    assert "29 even partitions" in by_name["partition-conjugators"].details
    assert by_name["form-parity"].details.endswith("k=8:skew")
    assert "n = 1 .. 6" in by_name["w-plus"].details


def test_verify_matrices_rejects_bad_bounds(capsys):
    assert main(["verify-matrices", "--max-n", "0"]) == 2
    assert "must be positive" in capsys.readouterr().err


# -- sweep --------------------------------------------------------------------


def test_sweep_small_cap():
    report = run_conjecture_sweep(max_dim=4)
    assert report.exit_code == 0
    assert report.oracle_agreement is True
    enumeration = report.checks[0]
    assert enumeration.name == "enumeration"
    rds_checks = [c for c in report.checks if c.name.startswith("rds ")]
    assert rds_checks and all(c.verdict == PASS for c in rds_checks)
    controls = [c for c in report.checks if c.name.startswith("control ")]
    assert {c.name for c in controls} >= {
        "control duplicate-blocks", "control dimension-mismatch",
        "control duplicate-parameter", "control dual-pair-parameter"}
    assert all(c.verdict == PASS for c in controls)


def test_sweep_rejects_out_of_range_cap(capsys):
    assert main(["sweep", "--max-dim", "13"]) == 2
    assert "between 2 and 12" in capsys.readouterr().err


def test_sweep_with_user_catalog(tmp_path):
    path = tmp_path / "user.ini"
    path.write_text(USER_CATALOG, encoding="utf-8")
    report = run_conjecture_sweep(catalog_path=str(path), max_dim=4)
    assert report.exit_code == 0
    names = [c.name for c in report.checks]
    assert "rds tau" in names
    assert "rds St(2,one)" in names


def test_sweep_bad_catalog_exits_three(tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("[cuspidal.x]\ndim = 2\ntype = orthogonal\nmodel = q8\n",
                    encoding="utf-8")
    report = run_conjecture_sweep(catalog_path=str(path))
    assert report.exit_code == 3
    assert report.checks[0].verdict == ERROR


# -- argument handling ------------------------------------------------------------


def test_unknown_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
