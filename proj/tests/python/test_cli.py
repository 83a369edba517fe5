import json
import os
import subprocess
from pathlib import Path

import pytest

BIN = os.environ.get("SPECDET_BIN")
CONFIGS = Path(os.environ.get("SPECDET_CONFIGS", Path(__file__).parents[2] / "configs"))

pytestmark = pytest.mark.skipif(not BIN, reason="SPECDET_BIN not set")


def run(*args, env=None):
    # decoded by hand: text mode would fold the CRLF line endings
    r = subprocess.run([BIN, *map(str, args)], capture_output=True, env=env)
    return subprocess.CompletedProcess(r.args, r.returncode, r.stdout.decode(), r.stderr.decode())


def test_det_prints_dwe_value():
    r = run("det", "--config", CONFIGS / "dwe_det.json")
    assert r.returncode == 0
    assert "det = 2.000000000 + 0.000000000i" in r.stdout


def test_beta_flag_overrides_cut():
    r = run("det", "--config", CONFIGS / "dwe_det.json", "--beta", "0", "--oracle")
    assert r.returncode == 0
    assert "det = -2.000000000 + 0.000000000i" in r.stdout
    assert "oracle deviation" in r.stdout


def test_compare_shifted_line():
    r = run("compare", "--config", CONFIGS / "shifted_line_compare.json")
    assert r.returncode == 0
    assert "ratio = -535.49165" in r.stdout


def test_exit_codes_for_nonexistence():
    assert run("classify", "--config", CONFIGS / "log_ray_witness.json").returncode == 2
    assert run("classify", "--config", CONFIGS / "exp_ray_witness.json").returncode == 3
    r = run("witness", "--config", CONFIGS / "log_ray_witness.json")
    assert r.returncode == 2
    assert r.stdout.startswith("n,partial_sum\r\n")


def test_sweep_csv_is_deterministic(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (out1, out2):
        assert run("sweep", "--config", CONFIGS / "three_rays_sweep.json", "--out", out).returncode == 0
    data = out1.read_bytes()
    assert data == out2.read_bytes()
    lines = data.decode().split("\r\n")
    assert lines[0] == "beta,re_det,im_det,abs_det,crossings"
    assert len([line for line in lines if line]) == 62


def test_zeta_with_oracle_columns():
    r = run("zeta", "--config", CONFIGS / "finite_zeta.json")
    assert r.returncode == 0
    rows = r.stdout.split("\r\n")
    assert rows[0] == "s_re,s_im,zeta_re,zeta_im,oracle_re,oracle_im"
    re, im = map(float, rows[1].split(",")[2:4])
    assert (re, im) == (4.0, 0.0)


def test_errors_are_single_line(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"spectrum": [{"kind": "power_rays", "c1": 1, "c2": 0, "angles": [1]}],
                               "command": "det"}))
    r = run("det", "--config", bad)
    assert r.returncode == 1
    assert r.stderr.startswith("ERROR:")
    assert "c2 must be positive" in r.stderr
    assert r.stderr.count("\n") == 1

    r = run("det", "--config", tmp_path / "missing.json")
    assert r.returncode == 1
    assert r.stderr.startswith("ERROR:")


def test_em_params_environment():
    env = dict(os.environ, SPECDET_EM_PARAMS="40,10")
    r = run("det", "--config", CONFIGS / "dwe_det.json", env=env)
    assert r.returncode == 0
    assert "det = 2.000000000" in r.stdout
    env["SPECDET_EM_PARAMS"] = "40"
    r = run("det", "--config", CONFIGS / "dwe_det.json", env=env)
    assert r.returncode == 1
    assert r.stderr.startswith("ERROR:")
