"""Command-line interface: value formatting, JSON mode, exit codes, file output."""

import json
import math

import numpy as np
import pytest

from lp2dual import (
    AscentOptions,
    GridFunction,
    NormEstimate,
    gahler_norm,
    gunawan_norm,
    make_rule,
    reports_equivalent,
    sample_function,
)
from lp2dual import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# norm2
# ---------------------------------------------------------------------------


def test_norm2_gunawan_formats_twelve_digits(capsys):
    code, out, err = run_cli(
        capsys,
        "norm2", "--norm", "gunawan", "--p", "2", "--f1", "const:1", "--f2", "poly:0,1",
        "--grid", "256",
    )
    assert code == 0 and err == ""
    rule = make_rule("midpoint", 256)
    expected = gunawan_norm(
        sample_function(rule, "const:1"), sample_function(rule, "poly:0,1"), 2.0
    )
    assert out.strip() == f"{expected:.12g}"


def test_norm2_gahler_anchor_value(capsys):
    code, out, _ = run_cli(
        capsys,
        "norm2", "--norm", "gahler", "--p", "2", "--f1", "const:1", "--f2", "poly:0,1",
        "--grid", "1024",
    )
    assert code == 0
    assert abs(float(out.strip()) - 1.0 / math.sqrt(12.0)) <= 1e-6


def test_norm2_json_payload(capsys):
    code, out, _ = run_cli(
        capsys,
        "norm2", "--norm", "gahler", "--p", "1.5", "--f1", "fourier:3,4",
        "--f2", "fourier:4,4", "--grid", "64", "--seed", "9", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["norm"] == "gahler"
    assert payload["p"] == 1.5
    assert payload["grid"] == 64
    assert payload["rule"] == "midpoint"
    assert payload["seed"] == 9
    assert payload["converged"] is True
    assert payload["is_lower_bound"] is True
    rule = make_rule("midpoint", 64)
    est = gahler_norm(
        sample_function(rule, "fourier:3,4"),
        sample_function(rule, "fourier:4,4"),
        1.5,
        AscentOptions(seed=9),
    )
    assert payload["value"] == est.value


def test_norm2_volume(capsys):
    code, out, _ = run_cli(
        capsys,
        "norm2", "--norm", "volume", "--p", "2", "--f1", "const:1", "--f2", "poly:0,1",
        "--grid", "256",
    )
    assert code == 0
    rule = make_rule("midpoint", 256)
    expected = gunawan_norm(
        sample_function(rule, "const:1"), sample_function(rule, "poly:0,1"), 2.0
    )
    assert float(out.strip()) == pytest.approx(expected, rel=1e-10)


def test_norm2_bad_spec_exits_2(capsys):
    code, out, err = run_cli(
        capsys,
        "norm2", "--norm", "gunawan", "--p", "2", "--f1", "nonsense:1",
        "--f2", "poly:0,1",
    )
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_norm2_bad_exponent_exits_2(capsys):
    code, _, err = run_cli(
        capsys,
        "norm2", "--norm", "gunawan", "--p", "0.5", "--f1", "const:1",
        "--f2", "poly:0,1",
    )
    assert code == 2 and err.startswith("error:")


# ---------------------------------------------------------------------------
# fnorm
# ---------------------------------------------------------------------------


def test_fnorm_bilinear_anchor(capsys):
    code, out, _ = run_cli(
        capsys,
        "fnorm", "--kind", "21", "--p", "2", "--kernel", "wedge:poly:0,1|const:1",
        "--grid", "256",
    )
    assert code == 0
    rule = make_rule("midpoint", 256)
    expected = gunawan_norm(
        sample_function(rule, "const:1"), sample_function(rule, "poly:0,1"), 2.0
    )
    assert float(out.strip()) == pytest.approx(expected, rel=1e-6)


def test_fnorm_json_reports_iterations(capsys):
    code, out, _ = run_cli(
        capsys,
        "fnorm", "--kind", "y", "--p", "1.5", "--kernel", "randsmooth:3,4",
        "--grid", "48", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "y"
    assert payload["converged"] is True
    assert payload["iterations"] >= 1
    assert payload["value"] > 0


def test_fnorm_ratio_rejects_symmetric_kernel(capsys):
    code, out, err = run_cli(
        capsys,
        "fnorm", "--kind", "g22", "--p", "2", "--kernel", "randsmooth:3,4",
        "--grid", "48",
    )
    assert code == 2
    assert out == ""
    assert "antisymmetric" in err


def test_fnorm_ratio_on_wedge_kernel(capsys):
    code, out, _ = run_cli(
        capsys,
        "fnorm", "--kind", "h22", "--p", "2", "--kernel", "wedge:poly:0,1|const:1",
        "--grid", "48", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["is_lower_bound"] is True
    assert payload["converged"] is True


def test_fnorm_not_converged_exit_code(capsys, monkeypatch):
    rule = make_rule("midpoint", 8)
    stub = NormEstimate(
        value=1.0,
        converged=False,
        iterations=60,
        starts=1,
        maximizers=(GridFunction(rule, np.ones(8)),),
        is_lower_bound=True,
    )
    monkeypatch.setattr(cli, "yq_norm", lambda *a, **k: stub)
    code, out, _ = run_cli(
        capsys,
        "fnorm", "--kind", "y", "--p", "2", "--kernel", "randsmooth:1,3",
        "--grid", "8",
    )
    assert code == 4
    assert out.strip() == "1"  # the value is still printed


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_single_suite_writes_report(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys,
        "verify", "--suite", "roundtrip", "--p-list", "2", "--trials", "2",
        "--grid", "32", "--out", str(out_path),
    )
    assert code == 0
    assert "suite=roundtrip pass=2 fail=0" in out
    payload = json.loads(out_path.read_text())
    assert payload["suite"] == "roundtrip"
    assert payload["p"] == [2.0]
    assert len(payload["trials"]) == 2


def test_verify_parallel_report_identical(capsys, tmp_path):
    base = tmp_path / "serial.json"
    threaded = tmp_path / "threads.json"
    common = (
        "verify", "--suite", "geometry_volume", "--p-list", "1,2", "--trials", "3",
        "--grid", "32", "--seed", "7",
    )
    assert run_cli(capsys, *common, "--out", str(base))[0] == 0
    assert run_cli(capsys, *common, "--out", str(threaded), "--parallel", "4")[0] == 0
    a = json.loads(base.read_text())
    b = json.loads(threaded.read_text())
    assert reports_equivalent(a, b)


def test_verify_unknown_suite_exits_2(capsys):
    code, _, err = run_cli(capsys, "verify", "--suite", "bogus", "--trials", "1")
    assert code == 2 and err.startswith("error:")


def test_verify_failure_exit_code(capsys, monkeypatch):
    class FakeReport:
        summary = {"pass": 0, "fail": 1, "min_margins": {"check": -0.5}, "wall_ms": 1.0}

        def to_payload(self):
            return {"summary": self.summary}

    monkeypatch.setattr(cli, "run_suite", lambda config, parallel=1: FakeReport())
    code, out, _ = run_cli(capsys, "verify", "--suite", "axioms", "--trials", "1")
    assert code == 3
    assert "fail=1" in out


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def test_gen_function_csv(capsys, tmp_path):
    out_path = tmp_path / "f.csv"
    code, out, _ = run_cli(
        capsys,
        "gen", "--what", "function", "--spec", "fourier:7,4", "--grid", "32",
        "--out", str(out_path),
    )
    assert code == 0
    assert out.strip() == str(out_path)
    lines = out_path.read_text().strip().splitlines()
    assert len(lines) == 32
    rule = make_rule("midpoint", 32)
    expected = sample_function(rule, "fourier:7,4")
    assert np.array_equal(np.array([float(s) for s in lines]), expected.samples)


def test_gen_kernel_csv_roundtrips_through_spec(capsys, tmp_path):
    out_path = tmp_path / "k.csv"
    code, _, _ = run_cli(
        capsys,
        "gen", "--what", "kernel", "--spec", "antisym:randsmooth:5,3", "--grid", "16",
        "--out", str(out_path),
    )
    assert code == 0
    from lp2dual import sample_kernel

    rule = make_rule("midpoint", 16)
    reloaded = sample_kernel(rule, f"csv:{out_path}")
    original = sample_kernel(rule, "antisym:randsmooth:5,3")
    assert np.array_equal(reloaded.samples, original.samples)


# ---------------------------------------------------------------------------
# parser-level behavior
# ---------------------------------------------------------------------------


def test_usage_errors_exit_1(capsys):
    assert run_cli(capsys, "norm2")[0] == 1  # missing required arguments
    assert run_cli(capsys, "unknown-command")[0] == 1
    assert run_cli(capsys)[0] == 1


def test_help_and_version_exit_0(capsys):
    assert run_cli(capsys, "--help")[0] == 0
    code, out, _ = run_cli(capsys, "--version")
    assert code == 0


def test_fnorm_max_iter_flag_lifts_the_search_budget(capsys):
    # This ratio search needs 79 iterations to satisfy its plateau rule, so
    # the default 60-iteration budget reports the value but exits 4;
    # --max-iter lifts the cap and the same command converges.
    args = (
        "fnorm", "--kind", "h22", "--p", "3",
        "--kernel", "wedge:fourier:1,5|fourier:2,5", "--grid", "48", "--json",
    )
    code, out, _ = run_cli(capsys, *args)
    assert code == 4
    payload = json.loads(out)
    assert payload["converged"] is False
    assert payload["iterations"] == 60

    code, out, _ = run_cli(capsys, *args, "--max-iter", "400")
    assert code == 0
    payload = json.loads(out)
    assert payload["converged"] is True
    assert payload["iterations"] == 79
    assert payload["value"] == pytest.approx(0.276813046, rel=1e-6)
