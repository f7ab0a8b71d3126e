"""Growth functions of nets: log-log slope estimates, class inference, negligibility."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DegenerateInputError, InsufficientDataError
from .norms import Window, derivative_lp
from .signals import INF_ORDER, NEG_INF, GeneralizedNet

MIN_FIT_POINTS = 8
MIN_SCALES = 16
DEFAULT_PLATEAU_TOL = 0.1
MIN_CONVERGENCE_RATE = 0.1
FLAT_SPREAD = 0.02


@dataclass(frozen=True)
class ScalingFit:
    """OLS fit of ``log value = intercept + slope * log eps``."""

    slope: float
    intercept: float
    r_squared: float
    residual_max: float
    n_points: int

    def to_dict(self) -> dict:
        return {"slope": self.slope, "intercept": self.intercept, "r2": self.r_squared,
                "resid": self.residual_max, "n": self.n_points}

    @classmethod
    def from_dict(cls, d: dict) -> "ScalingFit":
        return cls(d["slope"], d["intercept"], d["r2"], d["resid"], d["n"])


def fit_scaling(eps, values, min_points: int = MIN_FIT_POINTS) -> ScalingFit:
    """Least-squares slope of ``log(values)`` against ``log(eps)``.

    ``eps`` must be strictly decreasing; a constant response gets slope 0 and
    ``r_squared = 1`` by convention.
    """
    eps = np.asarray(eps, dtype=float)
    values = np.asarray(values, dtype=float)
    if eps.shape != values.shape or eps.ndim != 1:
        raise ValueError("eps and values must be matching 1-d arrays")
    if eps.size < min_points:
        raise InsufficientDataError(f"need at least {min_points} points, got {eps.size}")
    if np.any(eps <= 0) or np.any(np.diff(eps) >= 0):
        raise ValueError("eps must be positive and strictly decreasing")
    if np.any(~(values > 0)):
        raise DegenerateInputError("scaling fit needs strictly positive values")
    lx, ly = np.log(eps), np.log(values)
    if np.ptp(ly) <= 1e-12 * max(1.0, np.abs(ly).max()):
        return ScalingFit(0.0, float(ly.mean()), 1.0, 0.0, int(eps.size))
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (intercept + slope * lx)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot
    return ScalingFit(float(slope), float(intercept), float(np.clip(r2, 0.0, 1.0)),
                      float(np.max(np.abs(resid))), int(eps.size))


def check_scale_grid(eps_grid) -> np.ndarray:
    eps_grid = np.asarray(eps_grid, dtype=float)
    if eps_grid.size < MIN_SCALES:
        raise InsufficientDataError(f"scale grid needs at least {MIN_SCALES} scales, got {eps_grid.size}")
    ratios = eps_grid[1:] / eps_grid[:-1]
    if np.any(ratios >= 1) or np.any(ratios < 2 ** -0.25 * (1 - 1e-9)):
        raise ValueError("scale grid must decrease geometrically with ratio 2^-1/4 or finer")
    return eps_grid


def derivative_response(net: GeneralizedNet, max_order: int, p: float, window: Window | None,
                        eps_grid) -> np.ndarray:
    """Array ``[j, i]`` of ``||net(eps_i)^(j)||_{L^p(window)}``."""
    out = np.empty((max_order + 1, len(eps_grid)))
    for i, eps in enumerate(eps_grid):
        out[:, i] = derivative_lp(net(eps), max_order, p, window)
    return out


def _calibration_from_response(eps_grid, response) -> tuple[float, ScalingFit | None]:
    scale = np.max(response)
    if scale == 0:
        return NEG_INF, None
    positive = response > 1e-300
    if positive.sum() < MIN_FIT_POINTS:
        raise InsufficientDataError("too few scales with a non-vanishing response")
    fit = fit_scaling(eps_grid[positive], response[positive])
    return -fit.slope, fit


def estimate_calibration(net: GeneralizedNet, m: int, p: float = np.inf, window: Window | None = None,
                         eps_grid=None) -> tuple[float, ScalingFit | None]:
    """Calibration at order ``m`` of the ``W^{m,p}(window)`` seminorm of the net.

    The seminorm is a maximum over derivative orders ``j <= m`` and its
    calibration is the maximum of the per-order calibrations, so each order is
    fitted separately; the returned fit is the one attaining the maximum.
    """
    eps_grid = check_scale_grid(net.grid.default_scales() if eps_grid is None else eps_grid)
    response = derivative_response(net, m, p, window, eps_grid)
    per_order = [_calibration_from_response(eps_grid, row) for row in response]
    return max(per_order, key=lambda cf: cf[0])


@dataclass(frozen=True)
class OffsetPowerFit:
    """Fit of ``value ~ A + B eps^gamma`` by a scan over ``gamma``."""

    gamma: float
    offset: float
    amplitude: float
    rel_residual: float

    @property
    def convergent(self) -> bool:
        """The response tends to a finite nonzero limit as eps -> 0.

        Rates below ``MIN_CONVERGENCE_RATE`` are rejected: ``A - B eps^g`` with
        tiny ``g`` is indistinguishable from logarithmic growth on the grid.
        """
        return self.gamma >= MIN_CONVERGENCE_RATE and self.offset > 0

    @property
    def growth_exponent(self) -> float:
        """``0`` for a bounded response, else the (negative) power-law exponent."""
        return 0.0 if self.convergent else min(self.gamma, 0.0)


def fit_offset_power(eps, values, gammas=None) -> OffsetPowerFit:
    """Power law with an offset, fitted in relative least squares.

    Separates a bounded response that converges slowly (``A - B eps^g``,
    ``g > 0``) from a genuinely growing one, which a plain log-log slope over
    a few octaves cannot do.
    """
    eps = np.asarray(eps, dtype=float)
    values = np.asarray(values, dtype=float)
    if eps.size < MIN_FIT_POINTS:
        raise InsufficientDataError(f"need at least {MIN_FIT_POINTS} points, got {eps.size}")
    if np.any(~(values > 0)):
        raise DegenerateInputError("offset fit needs strictly positive values")
    if np.ptp(values) <= 1e-9 * values.max():
        return OffsetPowerFit(np.inf, float(values.mean()), 0.0, 0.0)
    if gammas is None:
        # slow positive rates mimic log growth and are left out of the scan
        gammas = np.arange(-6.0, 3.0, 0.002)
        gammas = gammas[(gammas < -0.01) | (gammas >= MIN_CONVERGENCE_RATE)]
    gammas = np.asarray(gammas, dtype=float)
    # two-column least squares for every gamma at once; columns are normalised
    # before the 2x2 normal equations and residuals are formed explicitly
    u = 1.0 / values
    w = eps[None, :] ** gammas[:, None] / values[None, :]
    nu = np.linalg.norm(u)
    nw = np.linalg.norm(w, axis=1)
    un, wn = u / nu, w / nw[:, None]
    c = wn @ un
    rhs_u, rhs_w = un.sum(), wn.sum(axis=1)
    det = 1.0 - c**2
    with np.errstate(divide="ignore", invalid="ignore"):
        alpha = (rhs_u - c * rhs_w) / det
        beta = (rhs_w - c * rhs_u) / det
    res = np.sum((alpha[:, None] * un[None, :] + beta[:, None] * wn - 1.0) ** 2, axis=1)
    res = np.where(np.isfinite(res), res, np.inf)
    i = int(np.argmin(res))
    a, b = alpha[i] / nu, beta[i] / nw[i]
    return OffsetPowerFit(float(gammas[i]), float(a), float(b), float(np.sqrt(res[i] / eps.size)))


def growth_exponent(eps, values) -> float:
    """Asymptotic exponent ``g <= 0`` with ``values = O(eps^g)``; ``0`` for a bounded response.

    Flat responses (spread under ``FLAT_SPREAD``) and identically zero ones
    are bounded outright, since an offset fit would chase their ripple.
    Sporadic exact zeros are skipped.
    """
    eps = np.asarray(eps, dtype=float)
    values = np.asarray(values, dtype=float)
    if not np.any(values > 0):
        return 0.0
    keep = values > 0
    if not keep.all():
        if keep.sum() < MIN_FIT_POINTS:
            return 0.0
        eps, values = eps[keep], values[keep]
    if np.ptp(values) <= FLAT_SPREAD * values.max():
        return 0.0
    return fit_offset_power(eps, values).growth_exponent


@dataclass(frozen=True)
class RegularityClass:
    """``(k, s)`` class; ``k_at_least`` marks a plateau that reaches the last order examined."""

    k: int | float
    s: float
    k_at_least: bool = False

    def __str__(self):
        k = "inf" if self.k == INF_ORDER else (f">={self.k}" if self.k_at_least else str(self.k))
        return f"({k}, {self.s:.3g})"

    def matches(self, k, s, tol: float = DEFAULT_PLATEAU_TOL, at_least: bool = False) -> bool:
        return self.k == k and self.k_at_least == at_least and abs(self.s - s) <= tol

    def to_dict(self) -> dict:
        k = None if self.k == INF_ORDER else int(self.k)
        return {"k": k, "k_at_least": self.k_at_least, "s": _json_float(self.s)}


def _json_float(v):
    if v == NEG_INF:
        return "-inf"
    return float(v)


def _from_json_float(v):
    return NEG_INF if v == "-inf" else float(v)


@dataclass
class CalibrationReport:
    orders: list[int]
    c_hat: list[float]
    fits: list[ScalingFit | None]
    window: Window | None
    p: float
    inferred_class: RegularityClass | None = None
    convexity_defects: list[float] = field(default_factory=list)
    monotone: bool = True

    def sharp_semimetric(self, m: int) -> float:
        """``exp(c(m))``, the sharp-topology size of the net at order ``m``."""
        return math.exp(self.c_hat[m]) if self.c_hat[m] != NEG_INF else 0.0

    def to_dict(self) -> dict:
        return {
            "orders": list(self.orders),
            "c_hat": [_json_float(c) for c in self.c_hat],
            "fits": [None if f is None else f.to_dict() for f in self.fits],
            "class": None if self.inferred_class is None else self.inferred_class.to_dict(),
            "convexity_defects": [_json_float(d) for d in self.convexity_defects],
            "monotone": self.monotone,
            "p": "inf" if np.isinf(self.p) else self.p,
            "window": None if self.window is None else self.window.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CalibrationReport":
        cl = d.get("class")
        inferred = None
        if cl is not None:
            inferred = RegularityClass(INF_ORDER if cl["k"] is None else cl["k"],
                                       _from_json_float(cl["s"]), cl["k_at_least"])
        win = d.get("window")
        return cls(list(d["orders"]), [_from_json_float(c) for c in d["c_hat"]],
                   [None if f is None else ScalingFit.from_dict(f) for f in d["fits"]],
                   None if win is None else Window(win["a"], win["b"]),
                   np.inf if d["p"] == "inf" else d["p"], inferred,
                   [_from_json_float(c) for c in d["convexity_defects"]], d["monotone"])

    def to_csv(self) -> str:
        lines = ["order,c_hat"]
        lines += [f"{m},{_json_float(c)}" for m, c in zip(self.orders, self.c_hat)]
        return "\n".join(lines) + "\n"


def convexity_defects(c_hat) -> list[float]:
    out = []
    for j in range(len(c_hat) - 2):
        trio = c_hat[j:j + 3]
        if NEG_INF in trio:
            out.append(0.0 if all(t == NEG_INF for t in trio) else float("nan"))
        else:
            out.append(trio[0] + trio[2] - 2.0 * trio[1])
    return out


def classify(report: CalibrationReport, plateau_tol: float = DEFAULT_PLATEAU_TOL) -> RegularityClass:
    """Infer ``(k, s)`` from the growth function by the plateau rule.

    ``k`` is the last order of the initial run with ``c(i) <= c(0) + plateau_tol``
    and ``s`` the largest calibration on that run.  A run reaching the last
    order reports ``k`` as "at least" that order.
    """
    c = report.c_hat
    if all(v == NEG_INF for v in c):
        return RegularityClass(INF_ORDER, NEG_INF)
    base = c[0]
    k = 0
    for i in range(1, len(c)):
        if c[i] <= base + plateau_tol:
            k = i
        else:
            break
    s = max(c[: k + 1])
    return RegularityClass(k, float(s), k_at_least=(k == len(c) - 1))


def growth_function(net: GeneralizedNet, max_order: int = 3, p: float = np.inf,
                    window: Window | None = None, eps_grid=None,
                    plateau_tol: float = DEFAULT_PLATEAU_TOL) -> CalibrationReport:
    """Estimated ``m -> c(m)`` for ``m = 0..max_order`` with class and convexity diagnostics."""
    eps_grid = check_scale_grid(net.grid.default_scales() if eps_grid is None else eps_grid)
    response = derivative_response(net, max_order, p, window, eps_grid)
    c_hat, fits = [], []
    best = (NEG_INF, None)
    for m in range(max_order + 1):
        c, fit = _calibration_from_response(eps_grid, response[m])
        if c >= best[0]:
            best = (c, fit)
        c_hat.append(best[0])
        fits.append(best[1])
    finite = [c for c in c_hat if c != NEG_INF]
    monotone = all(b >= a - plateau_tol for a, b in zip(finite, finite[1:]))
    report = CalibrationReport(list(range(max_order + 1)), c_hat, fits, window, p,
                               convexity_defects=convexity_defects(c_hat), monotone=monotone)
    report.inferred_class = classify(report, plateau_tol)
    return report


def negligibility_test(net: GeneralizedNet, window: Window | None = None, max_order: int = 2,
                       p: float = np.inf, eps_grid=None, b_witness: float = 6.0) -> bool:
    """Desk-scale surrogate for ``O(eps^b)`` for every ``b``: every order decays faster than ``b_witness``."""
    eps_grid = check_scale_grid(net.grid.default_scales() if eps_grid is None else eps_grid)
    for row in derivative_response(net, max_order, p, window, eps_grid):
        c, _ = _calibration_from_response(eps_grid, row)
        if c != NEG_INF and -c < b_witness:
            return False
    return True
