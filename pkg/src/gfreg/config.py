"""Analysis configuration: JSON loading, validation and a stable hash."""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from .calibration import DEFAULT_PLATEAU_TOL
from .frame import LPFrame, build_frame
from .grid import GridSpec
from .norms import Window


@dataclass(frozen=True)
class ScaleGridSpec:
    """Geometric scale grid from ``max`` down to ``min``; all ``None`` means the grid default."""

    min: float | None = None
    max: float | None = None
    count: int | None = None

    def resolve(self, grid: GridSpec) -> np.ndarray:
        if self.min is None and self.max is None and self.count is None:
            return grid.default_scales()
        default = grid.default_scales()
        lo = default[-1] if self.min is None else self.min
        hi = default[0] if self.max is None else self.max
        count = default.size if self.count is None else self.count
        return np.geomspace(hi, lo, count)


@dataclass(frozen=True)
class Tolerances:
    plateau_tol: float = DEFAULT_PLATEAU_TOL
    slope_tol: float = 0.05


@dataclass(frozen=True)
class AnalysisConfig:
    """Every knob of an analysis run.

    ``p`` may be ``inf``; ``window`` is ``None`` (the whole period) or an
    ``(a, b)`` pair.  Scale-count sufficiency is not checked here: a short
    grid is legal and shows up as failed fits downstream.
    """

    grid_n: int = 4096
    period: float = 16.0 * math.pi
    transition_sharpness: float = 1.0
    eps_grid: ScaleGridSpec = field(default_factory=ScaleGridSpec)
    max_order: int = 3
    p: float = math.inf
    window: tuple[float, float] | None = None
    wavelet_order: int = 1
    tolerances: Tolerances = field(default_factory=Tolerances)
    out_dir: str = "gfreg_out"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        grid = self.grid  # GridSpec validates n and period
        if not self.transition_sharpness > 0:
            raise ValueError("transition_sharpness must be positive")
        if not (isinstance(self.max_order, int) and self.max_order >= 1):
            raise ValueError("max_order must be an integer >= 1")
        if not (self.p >= 1):
            raise ValueError("p must be at least 1")
        if not (isinstance(self.wavelet_order, int) and self.wavelet_order >= 1):
            raise ValueError("wavelet_order must be an integer >= 1")
        e = self.eps_grid
        if e.count is not None and (not isinstance(e.count, int) or e.count < 2):
            raise ValueError("eps_grid.count must be an integer >= 2")
        scales = e.resolve(grid)
        if not (scales[-1] >= grid.scale_floor * (1 - 1e-12) and scales[0] <= 1.0 and scales[-1] < scales[0]):
            raise ValueError(f"eps_grid must satisfy {grid.scale_floor:g} <= min < max <= 1")
        if self.window is not None:
            Window(*self.window).validate(grid)
        t = self.tolerances
        if not (t.plateau_tol > 0 and t.slope_tol > 0):
            raise ValueError("tolerances must be positive")

    @property
    def grid(self) -> GridSpec:
        return GridSpec(self.grid_n, self.period)

    def frame(self) -> LPFrame:
        return build_frame(self.grid, self.transition_sharpness)

    def scales(self) -> np.ndarray:
        return self.eps_grid.resolve(self.grid)

    def window_obj(self) -> Window | None:
        return None if self.window is None else Window(*self.window)

    def with_overrides(self, **changes) -> "AnalysisConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **changes) if changes else self

    def to_dict(self) -> dict:
        d = asdict(self)
        d["p"] = "inf" if math.isinf(self.p) else self.p
        d["window"] = None if self.window is None else list(self.window)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        d = dict(data)
        if "eps_grid" in d:
            d["eps_grid"] = ScaleGridSpec(**(d["eps_grid"] or {}))
        if "tolerances" in d:
            d["tolerances"] = Tolerances(**(d["tolerances"] or {}))
        if "p" in d:
            d["p"] = float(d["p"])
        if d.get("window") is not None:
            d["window"] = tuple(float(v) for v in d["window"])
        return cls(**d)

    @classmethod
    def load(cls, path) -> "AnalysisConfig":
        with open(Path(path)) as fh:
            return cls.from_dict(json.load(fh))

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()
