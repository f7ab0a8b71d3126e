"""Zygmund exponents and membership tests for generalized Zygmund and Hoelder spaces."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .calibration import (ScalingFit, check_scale_grid, fit_offset_power, fit_scaling,
                          growth_exponent)
from .exceptions import DegenerateInputError
from .frame import LPFrame, _spectrum
from .grid import GridSpec, SampledFunction
from .norms import (Window, band_sups, derivative_sups, hoelder_seminorm, lowpass_sup, zygmund_functional,
                    zygmund_scales)
from .signals import DistributionSpec, GeneralizedNet

R_CAP = 4.0
UNDERFLOW = 1e-13
MEMBERSHIP_SLOPE = -0.05


@dataclass(frozen=True)
class ExponentEstimate:
    """A fitted regularity exponent; ``capped`` marks a response lost in round-off."""

    value: float
    fit: ScalingFit | None
    capped: bool = False

    def to_dict(self) -> dict:
        return {"value": self.value, "capped": self.capped,
                "fit": None if self.fit is None else self.fit.to_dict()}


MIN_OCTAVES = 4


def octave_leaders(scales, response) -> tuple[np.ndarray, np.ndarray]:
    """Largest response in each complete dyadic octave ``(2^-(q+1), 2^-q]``.

    Lacunary inputs put one frequency in each band and the band response
    vanishes whenever that frequency sits on a band edge.  Taking one leader
    per half-open octave samples the same phase of that periodic pattern in
    every octave, so the leaders follow the growth law exactly.  Octaves
    short of the fullest one by more than one sample are dropped.  Returns the
    geometric octave centres (decreasing) and the leaders.
    """
    scales = np.asarray(scales, dtype=float)
    response = np.asarray(response, dtype=float)
    q = np.floor(-np.log2(scales) + 1e-9).astype(int)
    octaves, counts = np.unique(q, return_counts=True)
    full = octaves[counts >= counts.max() - 1]
    leaders = np.array([response[q == o].max() for o in full])
    return 2.0 ** (-full - 0.5), leaders


def exponent_scales(grid: GridSpec, octaves: int = 5, per_octave: int = 4) -> np.ndarray:
    """Band scales spanning the finest ``octaves`` octaves above the resolution floor.

    Coarser bands see the global shape of the input (a Gaussian envelope, say)
    rather than its local regularity.
    """
    top = min(1.0, grid.scale_floor * 2.0**octaves)
    count = int(round(np.log2(top / grid.scale_floor) * per_octave)) + 1
    return np.geomspace(top, grid.scale_floor, count)


def zygmund_exponent(u, frame: LPFrame, eta_grid=None, r_cap: float = R_CAP) -> ExponentEstimate:
    """Slope of the octave leaders of ``||u * psi_eta||_inf`` against ``eta``.

    Octaves whose leader drops below ``1e-13`` of the low-pass sup are
    discarded as round-off; when fewer than four remain the input is treated
    as smooth and the cap is returned.
    """
    eta_grid = exponent_scales(frame.grid) if eta_grid is None else np.asarray(eta_grid, dtype=float)
    bands = band_sups(u, frame, eta_grid)
    ref = max(lowpass_sup(u, frame), bands.max())
    if ref == 0:
        raise DegenerateInputError("input vanishes on the grid")
    centres, leaders = octave_leaders(eta_grid, bands)
    keep = leaders > UNDERFLOW * ref
    if keep.sum() < MIN_OCTAVES:
        return ExponentEstimate(r_cap, None, capped=True)
    fit = fit_scaling(centres[keep], leaders[keep], min_points=MIN_OCTAVES)
    if fit.slope >= r_cap:
        return ExponentEstimate(r_cap, fit, capped=True)
    return ExponentEstimate(fit.slope, fit)


@dataclass(frozen=True)
class Membership:
    """Outcome of an ``O(1)`` test.

    ``margin`` is the smallest fitted growth exponent over the components of
    the norm (``0`` when all are bounded); ``fit`` is the plain log-log fit of
    the whole norm, kept for reporting.
    """

    member: bool
    margin: float
    fit: ScalingFit
    component_exponents: tuple
    values: tuple = field(repr=False, default=())

    def to_dict(self) -> dict:
        return {"member": self.member, "margin": self.margin, "fit": self.fit.to_dict(),
                "component_exponents": list(self.component_exponents)}


def _membership(eps_grid, components) -> Membership:
    # A norm made of non-negative parts is O(1) iff every part is, and each part
    # is judged by the growth exponent of an offset power law.  A plain slope
    # of the sum is fooled both by a large bounded part hiding genuine growth
    # and by a slowly converging partial sum that looks like growth.
    components = np.atleast_2d(np.asarray(components, dtype=float))
    total = components.sum(axis=0)
    exponents = tuple(float(growth_exponent(eps_grid, row)) for row in components)
    margin = min(exponents)
    return Membership(bool(margin >= MEMBERSHIP_SLOPE), margin, fit_scaling(eps_grid, total),
                      exponents, tuple(total))


def generalized_zygmund_membership(net: GeneralizedNet, r: float, s: float, frame: LPFrame,
                                   eps_grid=None, eta_grid=None) -> Membership:
    """Test ``||eps^s u_eps||_*^r = O(1)``; bounded means growth exponent at least -0.05.

    The low-pass term and the weighted band supremum are judged separately.
    """
    eps_grid = check_scale_grid(frame.grid.default_scales() if eps_grid is None else eps_grid)
    eta_grid = zygmund_scales(frame.grid) if eta_grid is None else np.asarray(eta_grid, dtype=float)
    parts = np.empty((2, eps_grid.size))
    for i, eps in enumerate(eps_grid):
        u = net(eps)
        parts[0, i] = lowpass_sup(u, frame)
        parts[1, i] = np.max(eta_grid ** (-r) * band_sups(u, frame, eta_grid))
    return _membership(eps_grid, parts * eps_grid**s)


def hoelder_class_membership(net: GeneralizedNet, k: int, tau: float, s: float,
                             window: Window | None = None, eps_grid=None,
                             max_gap: float | None = None) -> Membership:
    """Test ``||eps^s u_eps||_{H^{k,tau}} = O(1)`` with the same criterion.

    Each derivative sup up to order ``k`` and the Hoelder seminorm are judged
    separately.  For ``tau = 1`` the pair scan is limited to eight grid cells.
    """
    eps_grid = check_scale_grid(net.grid.default_scales() if eps_grid is None else eps_grid)
    if max_gap is None and tau == 1:
        max_gap = 8 * net.grid.spacing
    parts = np.empty((k + 2, eps_grid.size))
    for i, eps in enumerate(eps_grid):
        u = net(eps)
        parts[:k + 1, i] = derivative_sups(u, k, window)
        parts[k + 1, i] = hoelder_seminorm(u, k, tau, window, max_gap)
    return _membership(eps_grid, parts * eps_grid**s)


@dataclass(frozen=True)
class RegimeCheck:
    order: int
    regime: str
    predicted: float
    measured: float
    passed: bool
    sharp: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _regime(order: int, r: float) -> tuple[str, float]:
    if order < r:
        return "bounded", 0.0
    if order == r:
        return "log", 0.0
    return "power", r - order


def hoermann_membership(net: GeneralizedNet, r: float, frame: LPFrame, eps_grid=None,
                        max_order: int = 3, tol: float = 0.1) -> list[RegimeCheck]:
    """Per-order check of the three growth regimes of ``||u_eps^(a)||_inf``.

    ``O(1)`` below ``r``, ``O(log 1/eps)`` at integer ``r`` and
    ``O(eps^(r - a))`` above it.  Exponents come from an offset power-law fit
    so that slowly converging bounded responses read as bounded; an order
    passes when its measured exponent is at least the predicted one minus
    ``tol``, and is ``sharp`` when it is also within ``tol`` of it.
    """
    if max_order <= r:
        raise ValueError("max_order must exceed r")
    eps_grid = check_scale_grid(frame.grid.default_scales() if eps_grid is None else eps_grid)
    response = np.array([derivative_sups(net(eps), max_order) for eps in eps_grid]).T
    out = []
    for order, row in enumerate(response):
        regime, predicted = _regime(order, r)
        if row.max() <= UNDERFLOW * max(response[0].max(), 1.0):
            measured = np.inf
        else:
            if regime == "log":
                row = row / (1.0 + np.log(1.0 / eps_grid))
            measured = fit_offset_power(eps_grid, row).growth_exponent
        passed = measured >= predicted - tol
        sharp = passed and (measured == np.inf or abs(measured - predicted) <= tol)
        out.append(RegimeCheck(order, regime, predicted, float(measured), bool(passed), bool(sharp)))
    return out


def _as_values(u, grid: GridSpec) -> np.ndarray:
    if isinstance(u, SampledFunction):
        return u.values
    return SampledFunction(grid, spectrum=_spectrum(u, grid)).values


@dataclass(frozen=True)
class ProductCheck:
    constant: float
    product_norm: float
    norm1: float
    norm2: float
    product_exponent: ExponentEstimate

    def to_dict(self) -> dict:
        return {"K": self.constant, "product_norm": self.product_norm, "norm1": self.norm1,
                "norm2": self.norm2, "product_exponent": self.product_exponent.to_dict()}


def product_zygmund_check(u1: DistributionSpec, u2: DistributionSpec, r1: float, r2: float,
                          frame: LPFrame, eta_grid=None) -> ProductCheck:
    """``K = |u1 u2|_*^min(r1,r2) / (|u1|_*^r1 |u2|_*^r2)`` for bounded inputs with ``r1 + r2 > 0``."""
    if not r1 + r2 > 0:
        raise ValueError("product estimate needs r1 + r2 > 0")
    grid = frame.grid
    prod = SampledFunction(grid, values=_as_values(u1, grid) * _as_values(u2, grid))
    n1 = zygmund_functional(u1, r1, frame, eta_grid)
    n2 = zygmund_functional(u2, r2, frame, eta_grid)
    if n1 == 0 or n2 == 0:
        raise DegenerateInputError("a factor has vanishing Zygmund functional")
    rp = min(r1, r2)
    n12 = zygmund_functional(prod, rp, frame, eta_grid)
    return ProductCheck(n12 / (n1 * n2), n12, n1, n2, zygmund_exponent(prod, frame))
