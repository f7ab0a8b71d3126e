"""Windowed Sobolev, Hoelder and Zygmund functionals of sampled functions."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frame import LPFrame, _spectrum
from .grid import (SUP_OVERSAMPLE, GridSpec, SampledFunction, derivative_symbol, refine_spectrum,
                   spectral_sup)


@dataclass(frozen=True)
class Window:
    """Half-open interval ``[a, b)`` inside the period; the compact set a seminorm sees."""

    a: float
    b: float

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"window needs a < b, got [{self.a}, {self.b})")

    @classmethod
    def full(cls, grid: GridSpec) -> "Window":
        return cls(0.0, grid.period)

    @classmethod
    def around(cls, center: float, half_width: float) -> "Window":
        return cls(center - half_width, center + half_width)

    def validate(self, grid: GridSpec) -> "Window":
        if self.a < -1e-12 or self.b > grid.period * (1 + 1e-12):
            raise ValueError(f"window [{self.a}, {self.b}) leaves the period [0, {grid.period})")
        return self

    def is_full(self, grid: GridSpec) -> bool:
        return self.a <= 1e-12 and self.b >= grid.period * (1 - 1e-12)

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x)
        return (x >= self.a) & (x < self.b)

    def mask(self, grid: GridSpec, oversample: int = 1) -> np.ndarray:
        x = np.arange(grid.n * oversample) * (grid.spacing / oversample)
        return self.contains(x)

    def includes(self, other: "Window") -> bool:
        return self.a <= other.a and other.b <= self.b

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b}


def _window(window, grid):
    return Window.full(grid) if window is None else window.validate(grid)


def derivative_sups(f: SampledFunction, max_order: int, window: Window | None = None,
                    oversample: int = SUP_OVERSAMPLE) -> np.ndarray:
    """``sup_window |f^(j)|`` for ``j = 0..max_order`` on the refined grid."""
    window = _window(window, f.grid)
    full = window.is_full(f.grid)
    mask = None if full else window.mask(f.grid, oversample)
    out = np.empty(max_order + 1)
    for j in range(max_order + 1):
        spec = f.spectrum * derivative_symbol(f.grid, j)
        if full:
            out[j] = spectral_sup(spec, oversample)
        else:
            out[j] = np.max(np.abs(refine_spectrum(spec, oversample)[mask]))
    return out


def derivative_lp(f: SampledFunction, max_order: int, p: float, window: Window | None = None) -> np.ndarray:
    """``||f^(j)||_{L^p(window)}`` for ``j = 0..max_order`` by grid Riemann sums."""
    if np.isinf(p):
        return derivative_sups(f, max_order, window)
    if p < 1:
        raise ValueError("p must be >= 1")
    window = _window(window, f.grid)
    mask = window.mask(f.grid)
    h = f.grid.spacing
    out = np.empty(max_order + 1)
    for j in range(max_order + 1):
        vals = f.derivative(j).values[mask]
        out[j] = (h * np.sum(np.abs(vals) ** p)) ** (1.0 / p)
    return out


def sobolev_seminorm(f: SampledFunction, m: int, p: float = np.inf, window: Window | None = None) -> float:
    """``max_{j <= m} ||f^(j)||_{L^p(window)}``; derivatives are spectral."""
    if m < 0:
        raise ValueError("order m must be >= 0")
    return float(np.max(derivative_lp(f, m, p, window)))


def hoelder_seminorm(f: SampledFunction, k: int, tau: float, window: Window | None = None,
                     max_gap: float | None = None) -> float:
    """Discrete ``sup |f^(k)(x) - f^(k)(y)| / |x - y|^tau`` over sample pairs ``0 < |x-y| <= max_gap``.

    On the full window pairs are taken with periodic distance.  Every gap up
    to 32 cells is scanned; beyond that gaps are thinned geometrically (about
    64 per decade), since the quotient varies slowly with the gap there.
    """
    if not 0 < tau <= 1:
        raise ValueError("tau must lie in (0, 1]")
    grid = f.grid
    window = _window(window, grid)
    max_gap = 0.25 * grid.period if max_gap is None else float(max_gap)
    if max_gap <= grid.spacing:
        raise ValueError("max_gap must exceed the grid spacing")
    vals = f.derivative(k).values
    gaps = int(np.floor(max_gap / grid.spacing + 1e-9))
    periodic = window.is_full(grid)
    if not periodic:
        vals = vals[window.mask(grid)]
        gaps = min(gaps, vals.size - 1)
    best = 0.0
    for d in _gap_schedule(gaps):
        if periodic:
            diff = np.abs(np.roll(vals, -d) - vals)
        else:
            diff = np.abs(vals[d:] - vals[:-d])
        q = diff.max() / (d * grid.spacing) ** tau
        if q > best:
            best = q
    return float(best)


def _gap_schedule(gaps: int, dense: int = 32, per_decade: int = 64) -> np.ndarray:
    head = np.arange(1, min(gaps, dense) + 1)
    if gaps <= dense:
        return head
    count = int(np.ceil(per_decade * np.log10(gaps / dense))) + 1
    tail = np.unique(np.round(np.geomspace(dense, gaps, count)).astype(int))
    return np.union1d(head, tail)


def hoelder_norm(f: SampledFunction, k: int, tau: float, window: Window | None = None,
                 max_gap: float | None = None) -> float:
    """``||f||_{W^{k,inf}} + [f^(k)]_tau`` on the window."""
    return sobolev_seminorm(f, k, np.inf, window) + hoelder_seminorm(f, k, tau, window, max_gap)


def band_sups(u, frame: LPFrame, eta_grid) -> np.ndarray:
    """``||u * psi_eta||_inf`` for each ``eta`` in ``eta_grid``."""
    spec = _spectrum(u, frame.grid)
    out = np.empty(len(eta_grid))
    for i, eta in enumerate(eta_grid):
        frame.check_scale(eta)
        out[i] = spectral_sup(spec * frame.bandpass(eta))
    return out


def lowpass_sup(u, frame: LPFrame) -> float:
    spec = _spectrum(u, frame.grid)
    return spectral_sup(spec * frame.theta_samples)


def zygmund_scales(grid: GridSpec, per_octave: int = 4) -> np.ndarray:
    """Log-spaced scales from 1 down to the resolution floor."""
    octaves = np.log2(1.0 / grid.scale_floor)
    count = int(np.ceil(octaves * per_octave)) + 1
    return np.geomspace(1.0, grid.scale_floor, count)


def zygmund_functional(u, r: float, frame: LPFrame, eta_grid=None) -> float:
    """``||u * phi||_inf + max_eta eta^-r ||u * psi_eta||_inf`` over ``eta_grid``.

    A grid maximum, hence a lower bound for the supremum over all ``eta < 1``.
    """
    eta_grid = zygmund_scales(frame.grid) if eta_grid is None else np.asarray(eta_grid, dtype=float)
    bands = band_sups(u, frame, eta_grid)
    return lowpass_sup(u, frame) + float(np.max(eta_grid ** (-r) * bands))
