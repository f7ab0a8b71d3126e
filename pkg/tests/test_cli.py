import json

import pytest
from click.testing import CliRunner

from gfreg.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def test_frame_check(runner, tmp_path):
    res = runner.invoke(main, ["frame", "check"])
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    assert lines[0] == "order,phi_defect,psi_defect"
    assert len(lines) == 8


def test_analyze_writes_bundle(runner, tmp_path):
    res = runner.invoke(main, ["analyze", "delta", "--out", str(tmp_path)])
    assert res.exit_code == 0, res.output
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["input"] == "delta:m=0"
    assert report["verdicts"]["class"]["k"] == 0


@pytest.mark.parametrize("args", [["analyze", "delta:m="], ["analyze", "nothing"],
                                  ["analyze", "delta", "--grid-n", "100"],
                                  ["zygmund", "--spec", "cusp:tau=3", "--r", "0.5"]])
def test_usage_errors_exit_2(runner, args):
    assert runner.invoke(main, args).exit_code == 2


def test_unknown_config_key_exits_2(runner, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"nonsense": 1}))
    assert runner.invoke(main, ["frame", "check", "--config", str(cfg)]).exit_code == 2
    cfg.write_text("{not json")
    assert runner.invoke(main, ["frame", "check", "--config", str(cfg)]).exit_code == 2


def test_numeric_failure_exits_3(runner, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"eps_grid": {"count": 4}}))
    res = runner.invoke(main, ["smooth-test", "--spec", "delta", "--config", str(cfg)])
    assert res.exit_code == 3
    assert "smooth-test" in res.output


def test_zygmund_command(runner):
    res = runner.invoke(main, ["zygmund", "--spec", "weierstrass:tau=0.3", "--r", "0.3"])
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert out["r_hat"] == pytest.approx(0.3, abs=0.05)
    assert out["member"] is True


def test_wavelet_map_command(runner, tmp_path):
    res = runner.invoke(main, ["wavelet-map", "--spec", "cusp:tau=0.5", "--out", str(tmp_path)])
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert out["min_p_hat"] == pytest.approx(0.5, abs=0.05)
    assert (tmp_path / "wavelet_map.csv").exists()
    assert json.loads((tmp_path / "decay_profile.json").read_text()) == out


def test_smooth_test_command(runner):
    res = runner.invoke(main, ["smooth-test", "--spec", "gaussian"])
    assert res.exit_code == 0
    assert json.loads(res.output)["verdict"] == "smooth-consistent"
    res = runner.invoke(main, ["smooth-test", "--spec", "heaviside"])
    assert json.loads(res.output)["verdict"] == "singular"


def test_csv_input(runner, tmp_path):
    import math

    import numpy as np
    x = np.linspace(0, 16 * math.pi, 512, endpoint=False)
    path = tmp_path / "sig.csv"
    np.savetxt(path, np.column_stack([x, np.cos(x)]), delimiter=",")
    res = runner.invoke(main, ["smooth-test", "--spec", str(path)])
    assert res.exit_code == 0, res.output


def test_verify_filter_and_csv(runner, tmp_path):
    res = runner.invoke(main, ["verify", "--filter", "frame", "--out", str(tmp_path)])
    assert res.exit_code == 0
    assert res.output.strip().splitlines()[-1] == "4/4 checks passed"
    csv = (tmp_path / "verify.csv").read_text().splitlines()
    assert len(csv) == 5


def test_verify_failures_exit_1(runner, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"eps_grid": {"count": 8}}))
    res = runner.invoke(main, ["verify", "--filter", "calibration.delta", "--config", str(cfg)])
    assert res.exit_code == 1
    assert "FAIL" in res.output


def test_version(runner):
    res = runner.invoke(main, ["--version"])
    assert res.exit_code == 0 and "0.1.0" in res.output
