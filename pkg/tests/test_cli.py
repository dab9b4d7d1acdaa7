import csv
import json
import re
import subprocess
import sys

import pytest

from trustdyn.cli import EXIT_INVALID, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, main


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_stability_default(capsys):
    code, out, _ = _run(capsys, "stability")
    assert code == EXIT_OK
    rho = float(re.search(r"rho: (\S+)", out).group(1))
    assert rho < 1
    assert "verdict: stable" in out
    assert out.count("|lambda|=") == 10


def test_scan_beta_rows(capsys, tmp_path):
    code, out, _ = _run(capsys, "scan", "--param", "beta", "--range", "0:1:101", "--out", str(tmp_path))
    assert code == EXIT_OK
    with open(tmp_path / "scan_beta.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 101
    assert [float(r["param"]) for r in rows] == sorted(float(r["param"]) for r in rows)
    assert "first unstable beta" in out


def test_boundary_gamma(capsys):
    code, out, _ = _run(capsys, "boundary", "--param", "gamma")
    assert code == EXIT_OK
    gamma_star = float(re.search(r"gamma\*: (\S+)", out).group(1))
    assert 0.67 <= gamma_star <= 0.72


def test_simulate_writes_trajectory(capsys, tmp_path):
    code, out, _ = _run(capsys, "simulate", "--out", str(tmp_path), "--steps", "50")
    assert code == EXIT_OK
    lines = (tmp_path / "trajectory.csv").read_text().splitlines()
    assert lines[0].startswith("t,")
    assert "verdict: MaxStepsReached" in out
    assert len(lines) == 52


def test_equilibrium_and_topology(capsys, tmp_path):
    code, out, _ = _run(capsys, "equilibrium")
    assert code == EXIT_OK and "valid: True" in out
    code, out, _ = _run(capsys, "topology", "--out", str(tmp_path))
    assert code == EXIT_OK
    assert out.count("beta*=") == 3


def test_usage_errors(capsys):
    assert _run(capsys, "bogus")[0] == EXIT_USAGE
    assert _run(capsys)[0] == EXIT_USAGE
    assert _run(capsys, "scan", "--param", "beta", "--range", "x:y")[0] == EXIT_USAGE
    assert _run(capsys, "scan")[0] == EXIT_USAGE
    assert _run(capsys, "stability", "--config", "a.json", "--preset", "default")[0] == EXIT_USAGE


def test_invalid_config(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"gamma": 1.5}))
    code, _, err = _run(capsys, "stability", "--config", str(path))
    assert code == EXIT_INVALID
    assert "gamma" in err
    path.write_text("{ not json")
    assert _run(capsys, "validate", "--config", str(path))[0] == EXIT_INVALID


def test_numerical_failure(capsys, tmp_path):
    # no alpha in (0,1) destabilizes this network, so the search has nothing to bracket
    code, _, err = _run(capsys, "boundary", "--param", "alpha", "--preset", "topology")
    assert code == EXIT_NUMERIC
    assert "NoBracket" in err


def test_validate(capsys, tmp_path):
    code, out, _ = _run(capsys, "validate")
    assert code == EXIT_OK and "ok" in out
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"sampling": {"T0": [0, 3]}}))
    code, out, _ = _run(capsys, "validate", "--config", str(path))
    assert code == EXIT_OK
    assert "warning" in out


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "trustdyn", "stability"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "rho:" in proc.stdout


@pytest.mark.parametrize("param", ["alpha", "gamma"])
def test_scan_presets_by_param(capsys, tmp_path, param):
    code, out, _ = _run(capsys, "scan", "--param", param, "--range", "0:0.5:6", "--out", str(tmp_path))
    assert code == EXIT_OK
    assert "rows: 6" in out
