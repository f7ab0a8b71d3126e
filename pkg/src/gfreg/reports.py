"""Analysis pipeline and its persisted report bundle."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import metadata
from pathlib import Path

import numpy as np

from .calibration import growth_function
from .config import AnalysisConfig
from .exceptions import GfregError, StageFailure
from .grid import GridSpec
from .norms import band_sups
from .signals import DistributionSpec, embed, load_csv, parse_spec
from .tauberian import g_infinity_test, local_decay_map, wavelet_transform
from .zygmund import exponent_scales, zygmund_exponent


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def _clean(obj):
    """JSON-safe copy: non-finite floats become strings, numpy scalars become Python ones."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else ("inf" if v > 0 else ("-inf" if v < 0 else "nan"))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dump_json(data) -> str:
    return json.dumps(_clean(data), sort_keys=True, indent=2) + "\n"


def resolve_input(text: str, grid: GridSpec) -> DistributionSpec:
    """A catalog spec string, or a path to two-column CSV data."""
    path = Path(text)
    if text.lower().endswith(".csv") or path.is_file():
        return load_csv(path, grid)
    return parse_spec(text)


@dataclass(frozen=True)
class ReportBundle:
    """Everything one ``analyze`` run produces, keyed by section."""

    input: str
    config_hash: str
    tool_version: str
    calibration: dict
    zygmund: dict
    wavelet: dict
    verdicts: dict

    def to_dict(self) -> dict:
        return {"input": self.input, "config_hash": self.config_hash,
                "tool_version": self.tool_version, "calibration": self.calibration,
                "zygmund": self.zygmund, "wavelet": self.wavelet, "verdicts": self.verdicts}

    def to_json(self) -> str:
        return dump_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "ReportBundle":
        return cls(**{k: data[k] for k in cls.__dataclass_fields__})

    @classmethod
    def from_json(cls, text: str) -> "ReportBundle":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class AnalysisResult:
    bundle: ReportBundle
    tables: dict

    def write(self, out_dir) -> list[Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = [out / "report.json"]
        paths[0].write_text(self.bundle.to_json())
        for name, text in sorted(self.tables.items()):
            p = out / name
            p.write_text(text)
            paths.append(p)
        return paths


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except GfregError as exc:
        raise StageFailure(name, exc) from exc


def run_analyze(config: AnalysisConfig, source: str) -> AnalysisResult:
    """Calibration, Zygmund exponent and wavelet decay profile of one input.

    Parse errors propagate as ``SpecParseError``; numeric failures are
    wrapped in ``StageFailure`` naming the stage.
    """
    grid = config.grid
    spec = resolve_input(source, grid)
    frame = _stage("frame", config.frame)
    net = _stage("embed", embed, spec, frame)
    eps = config.scales()
    window = config.window_obj()
    report = _stage("calibration", growth_function, net, config.max_order, config.p, window, eps,
                    config.tolerances.plateau_tol)
    zyg = _stage("zygmund", zygmund_exponent, spec, frame)
    eta = exponent_scales(grid)
    bands = _stage("zygmund", band_sups, spec, frame, eta)
    wmap = _stage("wavelet", wavelet_transform, spec, config.wavelet_order, frame)
    profile = _stage("wavelet", local_decay_map, wmap)
    smooth = _stage("smooth-test", g_infinity_test, net, max(3, config.max_order), window, eps)
    summary = profile.to_dict()
    summary.pop("p_hat")
    bundle = ReportBundle(
        input=spec.to_string(),
        config_hash=config.config_hash(),
        tool_version=tool_version(),
        calibration=_clean(report.to_dict()),
        zygmund=_clean(zyg.to_dict()),
        wavelet=_clean({"psi_order": wmap.psi_order, **summary}),
        verdicts=_clean({"class": report.inferred_class.to_dict(),
                         "class_label": str(report.inferred_class),
                         "smoothness": smooth.to_dict(),
                         "monotone": report.monotone}),
    )
    decay = "x,p_hat,r_squared,saturated\n" + "".join(
        f"{x:.10g},{p:.10g},{r:.10g},{int(s)}\n"
        for x, p, r, s in zip(profile.x, profile.p_hat, profile.r_squared, profile.saturated))
    band_csv = "eta,band_sup\n" + "".join(f"{e:.10g},{b:.10e}\n" for e, b in zip(eta, bands))
    tables = {"growth.csv": report.to_csv(), "decay_profile.csv": decay, "band_response.csv": band_csv}
    return AnalysisResult(bundle, tables)
