"""Uniform periodic grids and the sampled functions that live on them.

Conventions: a function on ``[0, L)`` with ``n`` samples is stored through its
coefficients ``c_k`` in ``f(x) = sum_k c_k exp(i xi_k x)`` with angular
frequencies ``xi_k = 2 pi k / L`` in FFT order, so ``c = fft(values) / n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

#: Oversampling factor used when a sup-norm is read off a band-limited function.
SUP_OVERSAMPLE = 4


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid with ``n`` samples on a period of length ``period``."""

    n: int
    period: float

    def __post_init__(self):
        n = int(self.n)
        if n != self.n or n < 256 or n & (n - 1):
            raise ValueError(f"grid size must be a power of two >= 256, got {self.n!r}")
        if not self.period > 0:
            raise ValueError(f"period must be positive, got {self.period!r}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "period", float(self.period))

    @property
    def spacing(self) -> float:
        return self.period / self.n

    @cached_property
    def x(self) -> np.ndarray:
        x = np.arange(self.n) * self.spacing
        x.flags.writeable = False
        return x

    @cached_property
    def xi(self) -> np.ndarray:
        """Angular frequencies in FFT order."""
        xi = 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.spacing)
        xi.flags.writeable = False
        return xi

    @property
    def dxi(self) -> float:
        return 2.0 * np.pi / self.period

    @property
    def nyquist(self) -> float:
        return np.pi * self.n / self.period

    @property
    def center(self) -> float:
        return 0.5 * self.period

    @property
    def scale_floor(self) -> float:
        """Smallest scale whose band ``1/(2 eps) <= |xi| <= 1/eps`` is representable."""
        return 1.0 / self.nyquist

    def default_scales(self, count: int = 32, octaves: float = 5.0) -> np.ndarray:
        """Geometric scale grid descending from ``2**octaves`` times the floor down to it.

        Anchoring the grid at the resolution floor keeps every scale inside the
        asymptotic regime; the default spans five octaves in 32 steps.
        """
        top = min(1.0, self.scale_floor * 2.0**octaves)
        return np.geomspace(top, self.scale_floor, count)

    def refined(self, factor: int = 2) -> "GridSpec":
        return GridSpec(self.n * factor, self.period)

    def to_dict(self) -> dict:
        return {"n": self.n, "period": self.period}


class SampledFunction:
    """Samples of a (possibly complex) function on a periodic grid.

    Either ``values`` or ``spectrum`` must be given; the other is derived
    lazily and cached.
    """

    def __init__(self, grid: GridSpec, values=None, spectrum=None):
        if (values is None) == (spectrum is None):
            raise ValueError("pass exactly one of values or spectrum")
        self.grid = grid
        self._values = None if values is None else np.asarray(values, dtype=complex)
        self._spectrum = None if spectrum is None else np.asarray(spectrum, dtype=complex)
        data = self._values if self._values is not None else self._spectrum
        if data.shape != (grid.n,):
            raise ValueError(f"expected {grid.n} samples, got shape {data.shape}")

    @classmethod
    def from_callable(cls, grid: GridSpec, func) -> "SampledFunction":
        return cls(grid, values=func(grid.x))

    @property
    def values(self) -> np.ndarray:
        if self._values is None:
            self._values = np.fft.ifft(self._spectrum) * self.grid.n
        return self._values

    @property
    def spectrum(self) -> np.ndarray:
        if self._spectrum is None:
            self._spectrum = np.fft.fft(self._values) / self.grid.n
        return self._spectrum

    @property
    def real(self) -> np.ndarray:
        return self.values.real

    def derivative(self, order: int = 1) -> "SampledFunction":
        if order == 0:
            return self
        return SampledFunction(self.grid, spectrum=self.spectrum * derivative_symbol(self.grid, order))

    def scaled(self, factor: float) -> "SampledFunction":
        if self._spectrum is not None:
            return SampledFunction(self.grid, spectrum=factor * self._spectrum)
        return SampledFunction(self.grid, values=factor * self._values)

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        _check_same_grid(self, other)
        return SampledFunction(self.grid, spectrum=self.spectrum + other.spectrum)

    def __sub__(self, other: "SampledFunction") -> "SampledFunction":
        _check_same_grid(self, other)
        return SampledFunction(self.grid, spectrum=self.spectrum - other.spectrum)

    def __mul__(self, other):
        if isinstance(other, SampledFunction):
            _check_same_grid(self, other)
            return SampledFunction(self.grid, values=self.values * other.values)
        return self.scaled(other)

    __rmul__ = __mul__

    def fine_values(self, oversample: int = SUP_OVERSAMPLE) -> np.ndarray:
        """Trigonometric interpolant evaluated on an ``oversample``-times finer grid."""
        return refine_spectrum(self.spectrum, oversample)

    def sup(self, oversample: int = SUP_OVERSAMPLE) -> float:
        return spectral_sup(self.spectrum, oversample)

    def __repr__(self):
        return f"SampledFunction(n={self.grid.n}, period={self.grid.period:g})"


def _check_same_grid(a: SampledFunction, b: SampledFunction):
    if a.grid != b.grid:
        raise ValueError("sampled functions live on different grids")


def derivative_symbol(grid: GridSpec, order: int) -> np.ndarray:
    """Multiplier ``(i xi)**order``; the Nyquist mode is dropped for odd orders."""
    sym = (1j * grid.xi) ** order
    if order % 2:
        sym[grid.n // 2] = 0.0
    return sym


def refine_spectrum(spectrum: np.ndarray, oversample: int) -> np.ndarray:
    """Zero-pad a spectrum and return samples on the refined grid."""
    n = spectrum.size
    if oversample == 1:
        return np.fft.ifft(spectrum) * n
    m = n * oversample
    padded = np.zeros(m, dtype=complex)
    half = n // 2
    padded[:half] = spectrum[:half]
    padded[-half + 1:] = spectrum[half + 1:]
    padded[half] = 0.5 * spectrum[half]
    padded[-half] = 0.5 * spectrum[half]
    return np.fft.ifft(padded) * m


def spectral_sup(spectrum: np.ndarray, oversample: int = SUP_OVERSAMPLE) -> float:
    """Sup of the trigonometric interpolant, as on ``refine_spectrum``.

    Band-limited spectra are evaluated on the smallest power-of-two grid that
    samples their highest active mode ``2 * oversample`` times finer than Nyquist.
    """
    n = spectrum.size
    active = np.nonzero(spectrum)[0]
    if active.size == 0:
        return 0.0
    kmax = int(np.max(np.minimum(active, n - active)))
    m = 1 << int(np.ceil(np.log2(4 * oversample * (kmax + 1))))
    if kmax >= n // 2 or m >= n * oversample:
        return float(np.max(np.abs(refine_spectrum(spectrum, oversample))))
    small = np.zeros(m, dtype=complex)
    small[:kmax + 1] = spectrum[:kmax + 1]
    small[m - kmax:] = spectrum[n - kmax:]
    return float(np.max(np.abs(np.fft.ifft(small)))) * m


def trig_resample(x, values, grid: GridSpec) -> SampledFunction:
    """Resample scattered periodic data onto ``grid`` by trigonometric interpolation.

    The data are first fitted by least squares in the Fourier basis of the
    target grid, truncated to the number of available points.
    """
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=complex)
    if x.shape != values.shape or x.ndim != 1 or x.size < 4:
        raise ValueError("need matching one-dimensional x and value arrays with >= 4 points")
    order = np.argsort(x)
    x, values = x[order], values[order]
    kmax = min(grid.n // 2 - 1, (x.size - 1) // 2)
    k = np.arange(-kmax, kmax + 1)
    xi = 2.0 * np.pi * k / grid.period
    design = np.exp(1j * np.outer(x, xi))
    coef, *_ = np.linalg.lstsq(design, values, rcond=None)
    spectrum = np.zeros(grid.n, dtype=complex)
    spectrum[k % grid.n] = coef
    return SampledFunction(grid, spectrum=spectrum)
