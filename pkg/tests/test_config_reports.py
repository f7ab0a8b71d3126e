import json
import math

import pytest

from gfreg import AnalysisConfig, ReportBundle, run_analyze, SpecParseError, StageFailure
from gfreg.config import ScaleGridSpec


def test_default_config_scales_match_grid_default():
    cfg = AnalysisConfig()
    assert (cfg.scales() == cfg.grid.default_scales()).all()


def test_config_round_trip_and_hash(tmp_path):
    cfg = AnalysisConfig(max_order=4, window=(1.0, 5.0), eps_grid=ScaleGridSpec(count=20))
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg.to_dict()))
    again = AnalysisConfig.load(path)
    assert again == cfg
    assert again.config_hash() == cfg.config_hash()
    assert AnalysisConfig().config_hash() != cfg.config_hash()
    assert len(cfg.config_hash()) == 64


def test_config_p_infinity_serialises_as_string():
    d = AnalysisConfig().to_dict()
    assert d["p"] == "inf"
    assert AnalysisConfig.from_dict(d).p == math.inf


@pytest.mark.parametrize("data", [{"bogus": 1}, {"grid_n": 100}, {"p": 0.5}, {"max_order": 0},
                                  {"eps_grid": {"min": 1e-4}}, {"eps_grid": {"count": 1}},
                                  {"window": [5.0, 1.0]}, {"transition_sharpness": 0}])
def test_config_rejects_invalid(data):
    with pytest.raises((ValueError, TypeError)):
        AnalysisConfig.from_dict(data)


def test_short_scale_grid_is_legal_but_fails_downstream():
    cfg = AnalysisConfig(eps_grid=ScaleGridSpec(count=4))
    with pytest.raises(StageFailure) as info:
        run_analyze(cfg, "delta")
    assert info.value.stage == "calibration"


def test_analyze_bundle(tmp_path):
    res = run_analyze(AnalysisConfig(), "delta")
    b = res.bundle
    assert b.input == "delta:m=0"
    assert b.verdicts["class"] == {"k": 0, "k_at_least": False, "s": pytest.approx(1.0, abs=0.05)}
    paths = res.write(tmp_path)
    assert paths[0].name == "report.json"
    assert all(p.exists() for p in paths)
    text = paths[0].read_text()
    assert ReportBundle.from_json(text).to_json() == text


def test_analyze_is_deterministic():
    a = run_analyze(AnalysisConfig(), "cusp:tau=0.5")
    b = run_analyze(AnalysisConfig(), "cusp:tau=0.5")
    assert a.bundle.to_json() == b.bundle.to_json()
    assert a.tables == b.tables


def test_analyze_parse_error():
    with pytest.raises(SpecParseError):
        run_analyze(AnalysisConfig(), "delta:m=")
