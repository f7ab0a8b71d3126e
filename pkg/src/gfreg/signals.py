"""Catalog of test distributions and epsilon-indexed nets of smooth functions.

Every catalog entry knows its Fourier coefficients on a periodic grid, so
mollification and band projection are exact spectral multiplications.  Point
masses and their derivatives are never sampled in space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
from scipy.special import gammaln

from .exceptions import DomainSizeError, SpecGridMismatch, SpecParseError
from .frame import LPFrame, mollify
from .grid import GridSpec, SampledFunction, derivative_symbol, trig_resample

#: Marker for an identically vanishing response (calibration minus infinity).
NEG_INF = float("-inf")
#: Marker for "class index reaches the highest order examined".
INF_ORDER = math.inf


def _phase(grid: GridSpec, center: float) -> np.ndarray:
    return np.exp(-1j * grid.xi * center)


def _center(grid: GridSpec, center):
    return grid.center if center is None else float(center)


def _mode_index(grid: GridSpec, freq: float) -> int:
    k = freq * grid.period / (2.0 * np.pi)
    if abs(k - round(k)) > 1e-9 * max(1.0, abs(k)):
        raise SpecGridMismatch(f"frequency {freq:g} is not a grid frequency for period {grid.period:g}")
    k = int(round(k))
    if k >= grid.n // 2:
        raise SpecGridMismatch(f"frequency {freq:g} is at or beyond the Nyquist limit")
    return k


class DistributionSpec:
    """Base class; subclasses are frozen dataclasses with a ``name`` class attribute."""

    name = "abstract"

    def spectrum(self, grid: GridSpec) -> np.ndarray:
        cache = self.__dict__.setdefault("_spectrum_cache", {})
        if grid not in cache:
            spec = np.asarray(self._spectrum(grid), dtype=complex)
            spec.flags.writeable = False
            cache[grid] = spec
        return cache[grid]

    def _spectrum(self, grid: GridSpec) -> np.ndarray:
        raise NotImplementedError

    def sample(self, grid: GridSpec) -> SampledFunction:
        return SampledFunction(grid, spectrum=self.spectrum(grid))

    def known_calibration(self, order: int) -> float | None:
        """Exact calibration of the embedded net at derivative order ``order`` if known."""
        return None

    def singular_points(self, grid: GridSpec) -> list[float]:
        return []

    def params(self) -> dict:
        return {}

    def to_string(self) -> str:
        items = ",".join(f"{k}={_fmt(v)}" for k, v in self.params().items() if v is not None)
        return f"{self.name}:{items}" if items else self.name

    def __str__(self):
        return self.to_string()


def _fmt(v):
    if isinstance(v, float) and v.is_integer():
        return str(int(v))
    return repr(v) if isinstance(v, float) else str(v)


@dataclass(frozen=True, eq=False)
class Delta(DistributionSpec):
    """``delta^(m)`` at ``center``; spectrum ``(i xi)^m exp(-i xi c) / L``."""

    m: int = 0
    center: float | None = None
    name = "delta"

    def __post_init__(self):
        if self.m < 0 or int(self.m) != self.m:
            raise ValueError("delta order m must be a non-negative integer")

    def _spectrum(self, grid):
        c = _center(grid, self.center)
        return derivative_symbol(grid, int(self.m)) * _phase(grid, c) / grid.period

    def known_calibration(self, order):
        return self.m + 1.0 + order

    def singular_points(self, grid):
        return [_center(grid, self.center)]

    def params(self):
        return {"m": int(self.m), "center": self.center}


@dataclass(frozen=True, eq=False)
class Heaviside(DistributionSpec):
    """Periodic Heaviside: the square wave equal to 1 on ``[c, c + L/2)``."""

    center: float | None = None
    name = "heaviside"

    def _spectrum(self, grid):
        c = _center(grid, self.center)
        xi = grid.xi
        out = np.zeros(grid.n, dtype=complex)
        nz = xi != 0
        half = 0.5 * grid.period
        out[nz] = (np.exp(-1j * xi[nz] * c) - np.exp(-1j * xi[nz] * (c + half))) / (1j * xi[nz] * grid.period)
        out[0] = 0.5
        out[grid.n // 2] = 0.0
        return out

    def known_calibration(self, order):
        return float(order)

    def singular_points(self, grid):
        c = _center(grid, self.center)
        return [c, (c + 0.5 * grid.period) % grid.period]

    def params(self):
        return {"center": self.center}


@dataclass(frozen=True, eq=False)
class TriangleWave(DistributionSpec):
    """Periodic ``|x - c|`` on ``|x - c| <= L/2``; Lipschitz with coefficients ``~ k^-2``."""

    center: float | None = None
    name = "triangle"

    def _spectrum(self, grid):
        c = _center(grid, self.center)
        k = np.fft.fftfreq(grid.n, d=1.0 / grid.n)
        xi = grid.xi
        out = np.zeros(grid.n, dtype=complex)
        odd = (np.abs(k) % 2 == 1)
        out[odd] = -4.0 / (grid.period * xi[odd] ** 2) * _phase(grid, c)[odd]
        out[0] = 0.25 * grid.period
        out[grid.n // 2] = 0.0
        return out

    def known_calibration(self, order):
        return 0.0 if order <= 1 else order - 1.0

    def singular_points(self, grid):
        c = _center(grid, self.center)
        return [c, (c + 0.5 * grid.period) % grid.period]

    def params(self):
        return {"center": self.center}


def cusp_coefficients(tau: float, kmax: int) -> np.ndarray:
    """Fourier coefficients ``a_0..a_kmax`` of ``|2 sin(s/2)|^tau`` (s-period 2 pi)."""
    a = 0.5 * tau
    k = np.arange(kmax + 1, dtype=float)
    out = np.empty(kmax + 1)
    out[0] = np.exp(gammaln(tau + 1) - 2 * gammaln(a + 1))
    kk = k[1:]
    out[1:] = (-np.exp(gammaln(tau + 1) + gammaln(kk - a) - gammaln(kk + a + 1))
               * np.sin(np.pi * a) / np.pi)
    return out


@dataclass(frozen=True, eq=False)
class Cusp(DistributionSpec):
    """Periodised cusp ``|(L/pi) sin(pi (x - c) / L)|^tau``, equal to ``|x - c|^tau`` near ``c``."""

    tau: float = 0.5
    center: float | None = None
    name = "cusp"

    def __post_init__(self):
        if not 0 < self.tau <= 1:
            raise ValueError("cusp exponent tau must lie in (0, 1]")

    def _spectrum(self, grid):
        c = _center(grid, self.center)
        kmax = grid.n // 2
        coef = cusp_coefficients(self.tau, kmax)
        k = np.abs(np.fft.fftfreq(grid.n, d=1.0 / grid.n)).astype(int)
        out = coef[k] * (grid.period / (2.0 * np.pi)) ** self.tau
        out = out * _phase(grid, c)
        out[grid.n // 2] = 0.0
        return out

    def value(self, grid, x):
        c = _center(grid, self.center)
        return np.abs(grid.period / np.pi * np.sin(np.pi * (np.asarray(x) - c) / grid.period)) ** self.tau

    def known_calibration(self, order):
        return 0.0 if order == 0 else order - self.tau

    def singular_points(self, grid):
        return [_center(grid, self.center)]

    def params(self):
        return {"tau": float(self.tau), "center": self.center}


@dataclass(frozen=True, eq=False)
class Weierstrass(DistributionSpec):
    """Lacunary series ``sum_{j=0}^J 2^(-j tau) cos(2^j x)``, a Zygmund class witness.

    ``J`` defaults to the largest index with ``2^J`` at most half the Nyquist
    frequency of the grid.
    """

    tau: float = 0.5
    J: int | None = None
    name = "weierstrass"

    def __post_init__(self):
        if not 0 < self.tau <= 1:
            raise ValueError("weierstrass exponent tau must lie in (0, 1]")

    def terms(self, grid: GridSpec) -> int:
        jmax = int(np.floor(np.log2(0.5 * grid.nyquist) + 1e-12))
        if self.J is None:
            return jmax
        if 2.0**self.J >= grid.nyquist:
            raise SpecGridMismatch(f"2^J = {2**self.J} is not below the Nyquist frequency")
        return int(self.J)

    def _spectrum(self, grid):
        out = np.zeros(grid.n, dtype=complex)
        for j in range(self.terms(grid) + 1):
            k = _mode_index(grid, 2.0**j)
            out[k] += 0.5 * 2.0 ** (-j * self.tau)
            out[-k] += 0.5 * 2.0 ** (-j * self.tau)
        return out

    def known_calibration(self, order):
        return 0.0 if order == 0 else order - self.tau

    def params(self):
        return {"tau": float(self.tau), "J": self.J}


@dataclass(frozen=True, eq=False)
class Gaussian(DistributionSpec):
    """``exp(-(x - c)^2 / (2 sigma^2))``; needs ``sigma <= L / 12`` so periodic images vanish."""

    sigma: float = 1.0
    center: float | None = None
    name = "gaussian"

    def _spectrum(self, grid):
        if not 0 < self.sigma <= grid.period / 12:
            raise SpecGridMismatch("gaussian width must be positive and at most period/12")
        c = _center(grid, self.center)
        xi = grid.xi
        out = self.sigma * np.sqrt(2 * np.pi) / grid.period * np.exp(-0.5 * (self.sigma * xi) ** 2)
        return out * _phase(grid, c)

    def known_calibration(self, order):
        return 0.0

    def params(self):
        return {"sigma": float(self.sigma), "center": self.center}


@dataclass(frozen=True, eq=False)
class Trig(DistributionSpec):
    """Band-limited polynomial ``sum_{j=1}^modes cos(2 pi j x / L + j) / j``."""

    modes: int = 3
    name = "trig"

    def _spectrum(self, grid):
        if not 1 <= self.modes < grid.n // 4:
            raise SpecGridMismatch("trig modes must lie in [1, n/4)")
        out = np.zeros(grid.n, dtype=complex)
        for j in range(1, int(self.modes) + 1):
            out[j] += 0.5 * np.exp(1j * j) / j
            out[-j] += 0.5 * np.exp(-1j * j) / j
        return out

    def known_calibration(self, order):
        return 0.0

    def params(self):
        return {"modes": int(self.modes)}


@dataclass(frozen=True, eq=False)
class Constant(DistributionSpec):
    value: float = 1.0
    name = "constant"

    def _spectrum(self, grid):
        out = np.zeros(grid.n, dtype=complex)
        out[0] = self.value
        return out

    def known_calibration(self, order):
        if self.value == 0:
            return NEG_INF
        return 0.0 if order == 0 else NEG_INF

    def params(self):
        return {"value": float(self.value)}


@dataclass(frozen=True, eq=False)
class Sampled(DistributionSpec):
    """Data already sampled on a grid; re-gridding keeps the period and pads/truncates modes."""

    data: SampledFunction = field(repr=False)
    label: str = "sampled"
    name = "sampled"

    def _spectrum(self, grid):
        src = self.data.grid
        if src == grid:
            return self.data.spectrum
        if abs(src.period - grid.period) > 1e-12 * grid.period:
            raise SpecGridMismatch("sampled data has a different period than the target grid")
        out = np.zeros(grid.n, dtype=complex)
        half = min(src.n, grid.n) // 2
        out[:half] = self.data.spectrum[:half]
        out[-half + 1:] = self.data.spectrum[-half + 1:]
        return out

    def to_string(self):
        return f"sampled:label={self.label}"


@dataclass(frozen=True, eq=False)
class DerivativeSum(DistributionSpec):
    """Finite sum ``sum_i d^{m_i} T_i`` of derivatives of catalog pieces."""

    terms: tuple = ()
    name = "sum"

    def _spectrum(self, grid):
        out = np.zeros(grid.n, dtype=complex)
        for spec, order in self.terms:
            out = out + spec.spectrum(grid) * derivative_symbol(grid, int(order))
        return out

    def known_calibration(self, order):
        vals = []
        for spec, m in self.terms:
            v = spec.known_calibration(order + m)
            if v is None:
                return None
            vals.append(v)
        return max(vals) if vals else NEG_INF

    def singular_points(self, grid):
        return sorted({p for spec, _ in self.terms for p in spec.singular_points(grid)})

    def to_string(self):
        parts = [f"d{m}({spec.to_string()})" for spec, m in self.terms]
        return "sum[" + ";".join(parts) + "]"


def derivative(spec: DistributionSpec, order: int = 1) -> DerivativeSum:
    return DerivativeSum(((spec, order),))


CATALOG: dict[str, tuple[type, dict[str, Callable]]] = {
    "delta": (Delta, {"m": int, "center": float}),
    "heaviside": (Heaviside, {"center": float}),
    "triangle": (TriangleWave, {"center": float}),
    "cusp": (Cusp, {"tau": float, "center": float}),
    "weierstrass": (Weierstrass, {"tau": float, "J": int}),
    "gaussian": (Gaussian, {"sigma": float, "center": float}),
    "trig": (Trig, {"modes": int}),
    "constant": (Constant, {"value": float}),
}


def _convert(conv, raw: str, key: str):
    if conv is int:
        value = float(raw)
        if not value.is_integer():
            raise ValueError(f"{key} must be an integer")
        return int(value)
    return conv(raw)


def parse_spec(text: str) -> DistributionSpec:
    """Parse ``name[:key=value,...]``, e.g. ``"delta:m=1"`` or ``"cusp:tau=0.5"``."""
    text = text.strip()
    name, colon, rest = text.partition(":")
    name = name.strip().lower()
    if name not in CATALOG:
        raise SpecParseError(f"unknown distribution {name!r}; known: {', '.join(sorted(CATALOG))}")
    cls, fields = CATALOG[name]
    kwargs = {}
    if rest.strip():
        for item in rest.split(","):
            key, sep, raw = item.partition("=")
            key, raw = key.strip(), raw.strip()
            if not sep or not key or not raw:
                raise SpecParseError(f"malformed parameter {item!r} in {text!r}")
            if key not in fields:
                raise SpecParseError(f"{name} takes no parameter {key!r}")
            try:
                kwargs[key] = _convert(fields[key], raw, key)
            except ValueError as exc:
                raise SpecParseError(f"bad value for {key} in {text!r}: {exc}") from None
    elif colon:
        raise SpecParseError(f"empty parameter list in {text!r}")
    try:
        return cls(**kwargs)
    except ValueError as exc:
        raise SpecParseError(str(exc)) from None


def load_csv(path, grid: GridSpec) -> Sampled:
    """Read two-column ``x,value`` CSV data and resample onto ``grid``."""
    data = np.loadtxt(path, delimiter=",", ndmin=2, comments="#")
    if data.shape[1] != 2:
        raise SpecParseError(f"{path}: expected two columns (x, value)")
    sf = trig_resample(data[:, 0], data[:, 1], grid)
    return Sampled(sf, label=str(path))


class GeneralizedNet:
    """A net ``eps -> f_eps`` of smooth functions on a periodic grid.

    ``provenance`` records how the net was built; ``known_exponents`` maps a
    derivative order to the exact calibration when it is known in closed form.
    """

    def __init__(self, evaluator: Callable[[float], SampledFunction], grid: GridSpec,
                 provenance: tuple, known_exponents: Mapping[int, float] | None = None,
                 description: str = ""):
        self._evaluator = evaluator
        self.grid = grid
        self.provenance = provenance
        self.known_exponents = dict(known_exponents or {})
        self.description = description

    def __call__(self, eps: float) -> SampledFunction:
        return self._evaluator(float(eps))

    def __repr__(self):
        return f"GeneralizedNet({self.description or self.provenance[0]})"


def embed(spec: DistributionSpec, frame: LPFrame, max_known_order: int = 8) -> GeneralizedNet:
    """The mollifier embedding ``eps -> spec * phi_eps``."""
    spec.spectrum(frame.grid)  # raises SpecGridMismatch early
    known = {}
    for j in range(max_known_order + 1):
        c = spec.known_calibration(j)
        if c is not None:
            known[j] = c
    return GeneralizedNet(lambda eps: mollify(spec, eps, frame), frame.grid,
                          ("embedding", spec, frame), known, description=f"embed({spec})")


def scale_net(net: GeneralizedNet, s: float) -> GeneralizedNet:
    """``eps -> eps^s f_eps``; calibrations shift by ``-s``."""
    s = float(s)
    if s == 0:
        return net
    known = {j: (c if c == NEG_INF else c - s) for j, c in net.known_exponents.items()}
    base = net.provenance[1] if net.provenance[0] == "scaled" else net
    total = s + (net.provenance[2] if net.provenance[0] == "scaled" else 0.0)
    if total == 0:
        return base
    return GeneralizedNet(lambda eps: base(eps).scaled(eps**total), net.grid,
                          ("scaled", base, total), known,
                          description=f"eps^{total:g}*{base.description}")


def add_nets(a: GeneralizedNet, b: GeneralizedNet) -> GeneralizedNet:
    if a.grid != b.grid:
        raise ValueError("nets live on different grids")
    known = {}
    for j in set(a.known_exponents) & set(b.known_exponents):
        known[j] = max(a.known_exponents[j], b.known_exponents[j])
    return GeneralizedNet(lambda eps: a(eps) + b(eps), a.grid, ("sum", a, b), known,
                          description=f"{a.description}+{b.description}")


def constant_net(f: SampledFunction) -> GeneralizedNet:
    return GeneralizedNet(lambda eps: f, f.grid, ("constant", f), description="constant")


def zero_net(grid: GridSpec) -> GeneralizedNet:
    zero = SampledFunction(grid, spectrum=np.zeros(grid.n, dtype=complex))
    return GeneralizedNet(lambda eps: zero, grid, ("zero",),
                          {j: NEG_INF for j in range(9)}, description="zero")


def standard_bump(x):
    """``exp(-1 / (1 - 4 x^2))`` on ``|x| < 1/2``, zero outside."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 0.5
    out[inside] = np.exp(-1.0 / (1.0 - 4.0 * x[inside] ** 2))
    return out


def max_translates(grid: GridSpec, origin: float = 1.0) -> int:
    """Largest index ``n`` whose translate ``origin + 2 n`` still fits inside the period."""
    return int(np.floor((grid.period - origin - 0.5) / 2.0))


def active_terms(eps: float, n_max: int) -> np.ndarray:
    """Indices with ``eps`` in ``[1/(n+1), 1]``, i.e. ``n >= 1/eps - 1``, truncated at ``n_max``."""
    n = np.arange(n_max + 1)
    return n[eps * (n + 1) >= 1.0 - 1e-12]


def tail_sum(eps: float, n_max: int) -> float:
    """Partial sum ``sum (n+1)^-2`` over the active indices."""
    n = active_terms(eps, n_max)
    return float(np.sum(1.0 / (n + 1.0) ** 2))


def counterexample_net_1(rho: Callable | None, eps: float, grid: GridSpec,
                         origin: float = 1.0, n_max: int | None = None) -> SampledFunction:
    """Net negligible on compact sets yet not in the L^p negligible ideal.

    ``f_eps(x) = sum_n chi(eps >= 1/(n+1)) (n+1)^-2 rho(x - origin - 2n)`` with
    ``rho`` supported in ``[-1/2, 1/2]``.  The infinite tail is truncated at
    ``n_max`` translates, all of which must fit inside the period.
    """
    rho = standard_bump if rho is None else rho
    limit = max_translates(grid, origin)
    if origin < 0.5:
        raise DomainSizeError("origin must leave room for the support of rho")
    if n_max is None:
        n_max = limit
    elif n_max > limit:
        raise DomainSizeError(f"period {grid.period:g} holds only {limit + 1} translates, asked for {n_max + 1}")
    values = np.zeros(grid.n)
    x = grid.x
    for n in active_terms(eps, n_max):
        values += rho(x - origin - 2.0 * n) / (n + 1.0) ** 2
    return SampledFunction(grid, values=values)


def counterexample_net(grid: GridSpec, rho: Callable | None = None, origin: float = 1.0,
                       n_max: int | None = None) -> GeneralizedNet:
    return GeneralizedNet(lambda eps: counterexample_net_1(rho, eps, grid, origin, n_max), grid,
                          ("explicit_counterexample_1", rho, origin), description="counterexample_1")


def class_combine(class1: tuple, class2: tuple, op: str) -> dict:
    """Bounds on the class of a sum or product of nets of classes ``class1`` and ``class2``.

    Classes are ``(k, s)`` with ``k`` an integer or ``math.inf`` and ``s`` a
    real or ``-inf``.  Returns ``{"r_at_least": ..., "p_at_most": ...}``.
    """
    (k1, s1), (k2, s2) = class1, class2
    r = min(k1, k2)
    if op == "sum":
        p = max(s1, s2)
    elif op == "product":
        p = s1 + s2
    else:
        raise ValueError(f"op must be 'sum' or 'product', got {op!r}")
    return {"r_at_least": r, "p_at_most": p}
