"""Continuous Littlewood-Paley frame stored as spectral multipliers.

The low-pass profile ``theta`` equals 1 on ``|xi| <= 1/2`` and vanishes on
``|xi| >= 1`` with a C-infinity bump-quotient transition; the band profile is
``zeta(xi) = -xi * theta'(xi)``.  Convolution with the dilated spatial kernels
``phi_eps`` and ``psi_eps`` is multiplication by ``theta(eps xi)`` and
``zeta(eps xi)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exceptions import ResolutionError, ScaleWindowError
from .grid import GridSpec, SampledFunction

# exp(-a/t) underflows to zero long before t reaches this
_TINY_T = 1e-3

MULTIPLIER_CACHE = 512


def _bump(t, sharpness):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    mask = t > _TINY_T * sharpness
    out[mask] = np.exp(-sharpness / t[mask])
    return out


def _bump_prime(t, sharpness):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    mask = t > _TINY_T * sharpness
    tm = t[mask]
    out[mask] = sharpness / tm**2 * np.exp(-sharpness / tm)
    return out


def smoothstep(t, sharpness=1.0):
    """``g(t) / (g(t) + g(1 - t))`` with ``g(t) = exp(-sharpness / t)``; 0 at t<=0, 1 at t>=1."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    a, b = _bump(t, sharpness), _bump(1.0 - t, sharpness)
    return a / (a + b)


def smoothstep_prime(t, sharpness=1.0):
    t = np.asarray(t, dtype=float)
    inside = (t > 0) & (t < 1)
    out = np.zeros_like(t)
    ti = t[inside]
    a, b = _bump(ti, sharpness), _bump(1.0 - ti, sharpness)
    da, db = _bump_prime(ti, sharpness), _bump_prime(1.0 - ti, sharpness)
    out[inside] = (da * b + a * db) / (a + b) ** 2
    return out


@dataclass(frozen=True)
class LPFrame:
    """Littlewood-Paley quadruple ``(theta, zeta, phi, psi)`` on a periodic grid.

    ``theta`` and ``zeta`` are exposed as vectorised profiles so they can be
    evaluated at dilated frequencies; ``phi_spatial`` and ``psi_spatial`` are
    their inverse transforms on the grid, centred at ``x = 0``.
    """

    grid: GridSpec
    transition_sharpness: float = 1.0

    def theta(self, xi) -> np.ndarray:
        t = 2.0 * (1.0 - np.abs(np.asarray(xi, dtype=float)))
        return smoothstep(t, self.transition_sharpness)

    def theta_prime(self, xi) -> np.ndarray:
        """Analytic derivative of ``theta``."""
        xi = np.asarray(xi, dtype=float)
        t = 2.0 * (1.0 - np.abs(xi))
        return -2.0 * np.sign(xi) * smoothstep_prime(t, self.transition_sharpness)

    def zeta(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        return -xi * self.theta_prime(xi)

    @cached_property
    def theta_samples(self) -> np.ndarray:
        return self.theta(self.grid.xi)

    @cached_property
    def zeta_samples(self) -> np.ndarray:
        return self.zeta(self.grid.xi)

    @cached_property
    def phi_spatial(self) -> SampledFunction:
        return SampledFunction(self.grid, spectrum=self.theta_samples / self.grid.period)

    @cached_property
    def psi_spatial(self) -> SampledFunction:
        return SampledFunction(self.grid, spectrum=self.zeta_samples / self.grid.period)

    @cached_property
    def _multipliers(self) -> dict:
        return {}

    def _multiplier(self, kind: str, scale: float, profile) -> np.ndarray:
        cache = self._multipliers
        key = (kind, float(scale))
        out = cache.get(key)
        if out is None:
            if len(cache) >= MULTIPLIER_CACHE:
                cache.clear()
            out = profile(scale * self.grid.xi)
            out.setflags(write=False)
            cache[key] = out
        return out

    def lowpass(self, eps: float) -> np.ndarray:
        """Multiplier of ``u -> u * phi_eps`` on the grid (cached, read-only)."""
        return self._multiplier("theta", eps, self.theta)

    def bandpass(self, eta: float) -> np.ndarray:
        """Multiplier of ``u -> u * psi_eta`` on the grid (cached, read-only)."""
        return self._multiplier("zeta", eta, self.zeta)

    def check_scale(self, eps: float) -> float:
        eps = float(eps)
        floor = self.grid.scale_floor
        if not (floor * (1 - 1e-9) <= eps <= 1.0 + 1e-12):
            raise ScaleWindowError(f"scale {eps:g} outside admissible window [{floor:g}, 1]")
        return eps

    def to_dict(self) -> dict:
        return {"grid": self.grid.to_dict(), "transition_sharpness": self.transition_sharpness}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "LPFrame":
        grid = GridSpec(**data["grid"])
        return build_frame(grid, data.get("transition_sharpness", 1.0))


def build_frame(grid: GridSpec, transition_sharpness: float = 1.0,
                min_band_samples: int = 64) -> LPFrame:
    """Construct the frame after checking the grid resolves the transition band.

    The band ``[1/2, 1]`` dilated to the finest admissible scale is
    ``[nyquist/2, nyquist]``; it must contain ``min_band_samples`` grid
    frequencies.
    """
    if not transition_sharpness > 0:
        raise ValueError("transition_sharpness must be positive")
    xi = np.abs(grid.xi)
    in_band = np.count_nonzero((xi >= 0.5 * grid.nyquist) & (xi <= grid.nyquist))
    if in_band < min_band_samples:
        raise ResolutionError(
            f"only {in_band} frequencies across the transition band, need {min_band_samples}")
    return LPFrame(grid, float(transition_sharpness))


def _spectrum(u, grid: GridSpec) -> np.ndarray:
    if isinstance(u, SampledFunction):
        if u.grid != grid:
            raise ValueError("sampled function and frame use different grids")
        return u.spectrum
    return u.spectrum(grid)


def mollify(u, eps: float, frame: LPFrame) -> SampledFunction:
    """``u * phi_eps`` for a sampled function or a catalog distribution."""
    eps = frame.check_scale(eps)
    return SampledFunction(frame.grid, spectrum=_spectrum(u, frame.grid) * frame.lowpass(eps))


def band_project(u, eta: float, frame: LPFrame) -> SampledFunction:
    """``u * psi_eta``."""
    eta = frame.check_scale(eta)
    return SampledFunction(frame.grid, spectrum=_spectrum(u, frame.grid) * frame.bandpass(eta))


def log_gauss_weights(lo: float, hi: float, nodes: int):
    """Gauss-Legendre nodes and weights for ``d eta / eta`` on ``[lo, hi]`` (in ``log eta``).

    The band integrand does not vanish at the ends of a truncated range, so a
    trapezoid rule would stall at second order.
    """
    t, w = np.polynomial.legendre.leggauss(nodes)
    a, b = np.log(lo), np.log(hi)
    return np.exp(0.5 * (b - a) * t + 0.5 * (b + a)), 0.5 * (b - a) * w


def reconstruction_multiplier(frame: LPFrame, eps: float, quad_nodes: int) -> np.ndarray:
    """``theta(xi) + int_eps^1 zeta(eta xi) d eta / eta`` by Gauss-Legendre in ``log eta``."""
    out = frame.theta_samples.copy()
    if eps >= 1.0:
        return out
    eta, w = log_gauss_weights(eps, 1.0, quad_nodes)
    for e, wi in zip(eta, w):
        out += wi * frame.bandpass(e)
    return out


def lp_reconstruct(u, eps: float, frame: LPFrame, quad_nodes: int = 512) -> SampledFunction:
    """``u * phi + int_eps^1 u * psi_eta d eta / eta``, the band-wise rebuild of ``u * phi_eps``."""
    eps = frame.check_scale(eps)
    if quad_nodes < 64:
        raise ValueError("quad_nodes must be at least 64")
    mult = reconstruction_multiplier(frame, eps, quad_nodes)
    return SampledFunction(frame.grid, spectrum=_spectrum(u, frame.grid) * mult)


def lp_identity_defect(frame: LPFrame, y, nodes: int = 512) -> np.ndarray:
    """``|theta(y) + int_0^1 zeta(eta y) d eta / eta - 1|`` at probe frequencies ``y``.

    The integrand vanishes outside ``eta |y| in [1/2, 1]``, so the rule is
    laid on that interval clipped to ``(0, 1]``.
    """
    y = np.atleast_1d(np.abs(np.asarray(y, dtype=float)))
    out = np.empty_like(y)
    for i, yi in enumerate(y):
        total = float(frame.theta(yi))
        if yi > 0.5:
            lo, hi = 0.5 / yi, min(1.0, 1.0 / yi)
            eta, w = log_gauss_weights(lo, hi, nodes)
            total += float(np.dot(w, frame.zeta(eta * yi)))
        out[i] = abs(total - 1.0)
    return out


def _fd_weights(order: int, offsets: np.ndarray) -> np.ndarray:
    """Finite-difference weights for the ``order``-th derivative at 0 on integer offsets."""
    vander = np.vander(offsets.astype(float), increasing=True).T
    rhs = np.zeros(offsets.size)
    rhs[order] = float(np.prod(np.arange(1, order + 1)))
    return np.linalg.solve(vander, rhs)


def profile_moment(profile, order: int, step: float) -> float:
    """``int t^m f(t) dt`` for ``f`` the inverse transform of ``profile``.

    Returns the absolute value.  Uses ``int t^m f = i^m profile^(m)(0)`` with the derivative taken by a
    central difference stencil of spacing ``step`` on the frequency axis.
    """
    half = max(1, (order + 1) // 2)
    offsets = np.arange(-half, half + 1)
    w = _fd_weights(order, offsets)
    return abs(float(np.dot(w, profile(offsets * step)))) / step**order


def spatial_moment(sf: SampledFunction, order: int) -> float:
    """Trapezoid moment ``int t^m f(t) dt`` over one period centred at 0.

    Only trustworthy at low order: the kernels decay too slowly for the
    polynomial weight to be integrated over a finite period at high order.
    """
    grid = sf.grid
    vals = np.fft.fftshift(sf.values.real)
    t = (np.arange(grid.n) - grid.n // 2) * grid.spacing
    w = np.full(grid.n, grid.spacing)
    w[0] *= 0.5
    # mirror of the unpaired -L/2 sample
    total = np.dot(w, t**order * vals) + 0.5 * grid.spacing * (-t[0]) ** order * vals[0]
    return float(total)


def moment_defect(frame: LPFrame, max_order: int, step: float | None = None):
    """Moment defects of ``phi`` and ``psi`` for orders ``0..max_order``.

    Returns two lists: ``|int t^m phi - [m == 0]|`` and ``|int t^m psi|``.
    Moments are evaluated on the frequency side, where the stencil samples the
    profiles at multiples of ``step`` (default: the grid frequency spacing).
    """
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    step = frame.grid.dxi if step is None else step
    # keep the stencil inside the plateau |xi| < 1/2
    step = min(step, 0.45 / max(1, (max_order + 1) // 2))
    phi_def, psi_def = [], []
    for m in range(max_order + 1):
        phi_def.append(abs(profile_moment(frame.theta, m, step) - (1.0 if m == 0 else 0.0)))
        psi_def.append(profile_moment(frame.zeta, m, step))
    return phi_def, psi_def


def moment_table(frame: LPFrame, max_order: int = 6) -> list[tuple[int, float, float]]:
    phi_def, psi_def = moment_defect(frame, max_order)
    return [(m, phi_def[m], psi_def[m]) for m in range(max_order + 1)]

