"""Report plumbing, matrix files, determinism, CLI surfaces."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from spincert import matio
from spincert.errors import NonFinite, ParseError, UnknownSuite
from spincert.reports import CheckReport, RunConfig, all_passed, reports_to_text, run_suite
from spincert.rng import SplitMix64


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "spincert.cli", *args],
                          capture_output=True, text=True, env=env)


def test_matrix_roundtrip(tmp_path):
    rng = SplitMix64(91).stream("mat")
    m = rng.complex_normals(3, 5)
    path = tmp_path / "m.json"
    matio.save_matrix(m, path)
    assert np.array_equal(matio.load_matrix(path), m)


def test_matrix_parse_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"rows": 2, "cols": 2, "re": [1.0], "im": [0.0]}')
    with pytest.raises(ParseError):
        matio.load_matrix(path)
    path.write_text('{"rows": 1, "cols": 1, "re": [NaN], "im": [0.0]}')
    with pytest.raises(NonFinite):
        matio.load_matrix(path)
    path.write_text("not json")
    with pytest.raises(ParseError):
        matio.load_matrix(path)
    matio.save_matrix(np.array([[1.0 + 1j]]), path)
    with pytest.raises(ParseError):
        matio.load_real_matrix(path)


def test_identity_fixture(tmp_path):
    path = tmp_path / "eye.json"
    path.write_text(json.dumps({"rows": 2, "cols": 2,
                                "re": [1.0, 0.0, 0.0, 1.0], "im": [0.0] * 4}))
    assert np.array_equal(matio.load_matrix(path), np.eye(2))


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope", RunConfig())


def test_suite_isolation_on_failure():
    # an override that makes one check fail must not stop the others
    cfg = RunConfig(seed=0, tol_overrides={"weyl.ladder-oracle": -1.0})
    reports = run_suite("weyl", cfg)
    assert len(reports) == 4
    failed = [r for r in reports if not r.passed]
    assert [r.check for r in failed] == ["weyl.ladder-oracle"]
    assert not all_passed(reports)


def test_reports_deterministic_for_fixed_seed():
    cfg = RunConfig(seed=5)
    a = reports_to_text(run_suite("weyl", cfg), cfg)
    b = reports_to_text(run_suite("weyl", cfg), cfg)
    assert a == b
    other = RunConfig(seed=6)
    c = reports_to_text(run_suite("dirac", other), other)
    d = reports_to_text(run_suite("dirac", RunConfig(seed=7)), RunConfig(seed=7))
    assert c != d


def test_timing_flag_controls_emission():
    cfg = RunConfig(seed=0)
    reports = run_suite("so-obstruction", cfg)
    out = reports_to_text(reports, cfg)
    assert "runtimeMs" not in out
    cfg_t = RunConfig(seed=0, include_timing=True)
    out_t = reports_to_text(run_suite("so-obstruction", cfg_t), cfg_t)
    assert "runtimeMs" in out_t


def test_json_lines_format():
    cfg = RunConfig(seed=0, json_lines=True)
    text = reports_to_text(run_suite("weyl", cfg), cfg)
    lines = [ln for ln in text.splitlines() if ln]
    assert len(lines) == 4
    for ln in lines:
        obj = json.loads(ln)
        assert set(obj) == {"check", "params", "residual", "tol", "pass"}


def test_cli_suite_run_and_exit_codes(tmp_path):
    out_path = tmp_path / "report.json"
    res = run_cli("weyl", "--seed", "3", "--out", str(out_path))
    assert res.returncode == 0
    payload = json.loads(out_path.read_text())
    assert all(entry["pass"] for entry in payload)
    res = run_cli("weyl", "--seed", "3", "--tol", "weyl.ladder-oracle=-1")
    assert res.returncode == 1


def test_cli_env_overrides(tmp_path):
    out_path = tmp_path / "report.json"
    res = run_cli("weyl", env_extra={"SPINC_SEED": "3", "SPINC_OUT": str(out_path)})
    assert res.returncode == 0
    assert out_path.exists()


def test_cli_byte_identical_runs():
    a = run_cli("dirac", "--seed", "11")
    b = run_cli("dirac", "--seed", "11")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_cli_gamma_emission():
    res = run_cli("gamma", "--n", "4")
    assert res.returncode == 0
    mats = json.loads(res.stdout)
    assert len(mats) == 4 and mats[0]["rows"] == 4
    res_minus = run_cli("gamma", "--n", "3", "--branch", "-")
    plus = json.loads(run_cli("gamma", "--n", "3", "--branch", "+").stdout)
    minus = json.loads(res_minus.stdout)
    assert plus[2]["im"] != minus[2]["im"]  # branch flips the last generator


def test_cli_monodromy_and_obstruction():
    res = run_cli("monodromy", "--n", "3", "--plane", "1,2", "--turns", "1", "--steps", "300")
    assert json.loads(res.stdout) == {"monodromy": -1}
    res = run_cli("monodromy", "--n", "4", "--plane", "2,3", "--turns", "2", "--steps", "600")
    assert json.loads(res.stdout) == {"monodromy": 1}
    res = run_cli("so-obstruction", "--n", "3", "--steps", "200")
    assert res.returncode == 0
    report = json.loads(res.stdout)[0]
    assert report["params"]["monodromy"] == -1
    assert report["params"]["conclusion"] == "no section"


def test_cli_spin_lift_and_factorize(tmp_path):
    from spincert.gamma import build_gamma
    from spincert.spinc import epsilon, SpinCElement
    from tests.test_spin import random_rotor
    rng = SplitMix64(92).stream("cli")
    rot_path = tmp_path / "r.json"
    eps_path = tmp_path / "e.json"
    x = SpinCElement(random_rotor(3, rng), np.exp(0.4j))
    matio.save_matrix(x.rotation(), rot_path)
    res = run_cli("spin-lift", "--n", "3", "--in", str(rot_path))
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["n"] == 3
    rep = build_gamma(3, +1)
    matio.save_matrix(epsilon(x, rep), eps_path)
    res = run_cli("factorize", "--pprime", str(rot_path), "--epsprime", str(eps_path),
                  "--unitary")
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["ok"] and out["unitary"]
    # degraded input: exit 1
    bad = matio.load_matrix(eps_path)
    bad[0, 0] *= 2.0
    matio.save_matrix(bad, eps_path)
    res = run_cli("factorize", "--pprime", str(rot_path), "--epsprime", str(eps_path))
    assert res.returncode == 1


def test_cli_dirac_paper_gammas():
    res = run_cli("dirac-verify", "--paper-gammas", "--count", "20", "--seed", "2")
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out[0]["pass"] and out[0]["params"]["failures"] == 0


def test_cli_usage_error_exit_code():
    res = run_cli("no-such-command")
    assert res.returncode == 2


def test_check_report_output_shape():
    rep = CheckReport(check="x", params={"a": 1}, residual=0.5, tol=1.0,
                      passed=True, runtime_ms=7)
    d = rep.to_output_dict(include_timing=True)
    assert d["runtimeMs"] == 7
    assert d["pass"] is True
