"""The desk-scale verification suite behind ``gfreg verify``.

Each check returns rows ``(id, tag, anchor, measured, expected, tol, verdict)``.
Numeric errors inside a check are recorded as failed rows, never raised.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .calibration import estimate_calibration, growth_function
from .config import AnalysisConfig
from .exceptions import GfregError
from .frame import build_frame, lp_identity_defect, lp_reconstruct, moment_defect, mollify
from .norms import Window, derivative_lp
from .reports import run_analyze
from .signals import (Constant, Cusp, Delta, Gaussian, Heaviside, TriangleWave, Trig, Weierstrass,
                      counterexample_net_1, derivative, embed, max_translates, scale_net,
                      standard_bump)
from .tauberian import (brute_force_slope, fourier_decay_check, g_infinity_test,
                        quasiasymptotic_exponent, selected_scale_slope)
from .zygmund import (generalized_zygmund_membership, hoelder_class_membership, hoermann_membership,
                      product_zygmund_check, zygmund_exponent)

VERIFY_SEED = 20240611


@dataclass(frozen=True)
class CheckRow:
    id: str
    tag: str
    anchor: str
    measured: object
    expected: object
    tol: object
    passed: bool

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def cells(self) -> list[str]:
        return [self.id, self.tag, self.anchor, _fmt(self.measured), _fmt(self.expected),
                _fmt(self.tol), self.verdict]


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.6g}"
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


class Context:
    """Grid, frame and scale grid shared by the checks of one run."""

    def __init__(self, config: AnalysisConfig):
        self.config = config
        self.grid = config.grid
        self.frame = config.frame()
        self.eps = config.scales()
        self._nets = {}

    def net(self, spec):
        key = spec.to_string()
        if key not in self._nets:
            self._nets[key] = embed(spec, self.frame)
        return self._nets[key]


def catalog():
    return [Delta(0), Delta(1), Delta(2), Heaviside(), TriangleWave(), Cusp(0.5), Weierstrass(0.3),
            Weierstrass(0.6), Gaussian(), Trig()]


# ------------------------------------------------------------------ frame

def check_frame_moments(ctx):
    phi, psi = moment_defect(ctx.frame, 6)
    worst_phi = max(phi[1:])
    worst_psi = max(psi)
    return [CheckRow("frame.moments.phi", "frame", "mollifier moments 1..6 vanish", worst_phi, 0.0, 1e-8,
                     worst_phi < 1e-8),
            CheckRow("frame.moments.psi", "frame", "band moments 0..6 vanish", worst_psi, 0.0, 1e-8,
                     worst_psi < 1e-8)]


def check_lp_identity(ctx):
    probes = np.geomspace(0.01, 0.9 * ctx.grid.nyquist, 16)
    worst = float(lp_identity_defect(ctx.frame, probes).max())
    return [CheckRow("frame.lp_identity", "frame", "low-pass plus bands is the identity", worst, 0.0,
                     1e-6, worst < 1e-6)]


def check_reconstruction(ctx):
    eps = ctx.grid.scale_floor
    worst = 0.0
    for spec in catalog():
        err = (lp_reconstruct(spec, eps, ctx.frame, 512) - mollify(spec, eps, ctx.frame)).sup()
        worst = max(worst, err)
    return [CheckRow("frame.reconstruction", "frame", "band rebuild of the mollified input", worst, 0.0,
                     1e-3, worst < 1e-3)]


# ------------------------------------------------------------------ calibration

def check_delta_calibration(ctx):
    rows = []
    for m in range(3):
        net = ctx.net(Delta(m))
        for j in range(3):
            c, _ = estimate_calibration(net, j, np.inf, None, ctx.eps)
            want = m + 1 + j
            rows.append(CheckRow(f"calibration.delta.m{m}.j{j}", "calibration",
                                 "delta derivative growth m+1+j", c, want, 0.05, abs(c - want) < 0.05))
    return rows


def check_classification(ctx):
    cases = [(Delta(0), 0, 1.0, False), (Delta(1), 0, 2.0, False), (Heaviside(), 0, 0.0, False),
             (Gaussian(), 3, 0.0, True)]
    rows = []
    for spec, k, s, at_least in cases:
        rep = growth_function(ctx.net(spec), 3, np.inf, None, ctx.eps, 0.1)
        cl = rep.inferred_class
        want = f"({'>=' if at_least else ''}{k}, {s:g})"
        rows.append(CheckRow(f"calibration.class.{spec.name}{getattr(spec, 'm', '')}", "calibration",
                             "regularity class from the growth plateau", str(cl), want, 0.1,
                             cl.matches(k, s, 0.1, at_least)))
    return rows


def check_convexity(ctx):
    worst = np.inf
    for spec in catalog():
        rep = growth_function(ctx.net(spec), 3, np.inf, None, ctx.eps)
        finite = [d for d in rep.convexity_defects if np.isfinite(d)]
        if finite:
            worst = min(worst, min(finite))
    return [CheckRow("calibration.convexity", "calibration", "growth functions are convex", worst,
                     ">= -0.15", 0.15, worst >= -0.15)]


def check_scaling_shift(ctx):
    rows = []
    for spec in (Delta(0), Heaviside(), Cusp(0.5), Weierstrass(0.3)):
        base = growth_function(ctx.net(spec), 3, np.inf, None, ctx.eps).c_hat
        for s in (-2, 1):
            shifted = growth_function(scale_net(ctx.net(spec), s), 3, np.inf, None, ctx.eps).c_hat
            worst = max(abs(a - (b - s)) for a, b in zip(shifted, base))
            rows.append(CheckRow(f"calibration.shift.{spec.name}.s{s}", "calibration",
                                 "eps^s shifts every calibration by -s", worst, 0.0, 0.1, worst < 0.1))
    return rows


# ------------------------------------------------------------------ zygmund

def check_zygmund_exponents(ctx):
    cases = [(Weierstrass(0.3), 0.3), (Weierstrass(0.6), 0.6), (Cusp(0.5), 0.5),
             (derivative(Weierstrass(0.3)), -0.7)]
    rows = []
    for spec, want in cases:
        est = zygmund_exponent(spec, ctx.frame)
        rows.append(CheckRow(f"zygmund.exponent.{spec.to_string()}", "zygmund",
                             "band-sup slope equals the Zygmund order", est.value, want, 0.05,
                             abs(est.value - want) < 0.05))
    return rows


def check_membership_agreement(ctx):
    specs = [Delta(0), Delta(1), Heaviside(), TriangleWave(), Cusp(0.5), Weierstrass(0.3),
             Weierstrass(0.6), Gaussian(), Trig()]
    agree, total, bad = 0, 0, []
    for spec in specs:
        net = ctx.net(spec)
        for k in (0, 1):
            for tau in (0.3, 0.5, 0.9):
                a = generalized_zygmund_membership(net, k + tau, 0.0, ctx.frame, ctx.eps)
                b = hoelder_class_membership(net, k, tau, 0.0, None, ctx.eps)
                total += 1
                if a.member == b.member:
                    agree += 1
                else:
                    bad.append(f"{spec.to_string()}@{k + tau:g}")
    return [CheckRow("zygmund.membership_agreement", "zygmund",
                     "Zygmund and Hoelder memberships coincide" + (f" [{'; '.join(bad)}]" if bad else ""),
                     f"{agree}/{total}", f"{total}/{total}", 0, agree == total)]


def check_hoermann(ctx):
    checks = hoermann_membership(ctx.net(Weierstrass(0.3)), 0.3, ctx.frame, ctx.eps, max_order=3, tol=0.1)
    return [CheckRow(f"zygmund.hoermann.order{c.order}", "zygmund", f"{c.regime} regime of derivative sups",
                     c.measured, c.predicted, 0.1, c.passed) for c in checks]


def check_product_stability(ctx):
    fine_frame = build_frame(ctx.grid.refined(2), ctx.frame.transition_sharpness)
    pairs = [(Weierstrass(0.3), Weierstrass(0.6), 0.3, 0.6), (Weierstrass(0.3), Gaussian(sigma=4.0), 0.3, 2.0),
             (Cusp(0.5), TriangleWave(), 0.5, 1.0)]
    rows = []
    for u1, u2, r1, r2 in pairs:
        k0 = product_zygmund_check(u1, u2, r1, r2, ctx.frame).constant
        k1 = product_zygmund_check(u1, u2, r1, r2, fine_frame).constant
        rel = abs(k1 - k0) / abs(k0)
        rows.append(CheckRow(f"zygmund.product.{u1.to_string()}*{u2.to_string()}", "zygmund",
                             "product constant stable under refinement", rel, 0.0, 0.25, rel < 0.25))
    return rows


# ------------------------------------------------------------------ tauberian

def check_smoothness(ctx):
    truth = [(Gaussian(), True), (Trig(), True), (Delta(0), False), (Delta(1), False), (Heaviside(), False),
             (Cusp(0.5), False), (Weierstrass(0.3), False)]
    correct = 0
    rows = []
    for spec, smooth in truth:
        v = g_infinity_test(ctx.net(spec), 3, None, ctx.eps, 0.25)
        correct += v.smooth == smooth
        rows.append(CheckRow(f"tauberian.smooth.{spec.to_string()}", "tauberian",
                             "one exponent bounds all orders iff smooth", v.label,
                             "smooth-consistent" if smooth else "singular", 0, v.smooth == smooth))
    rows.append(CheckRow("tauberian.smooth.total", "tauberian", "smoothness dichotomy",
                         f"{correct}/{len(truth)}", f"{len(truth)}/{len(truth)}", 0, correct == len(truth)))
    return rows


def check_fourier_decay(ctx):
    rows = []
    for spec, want in ((Delta(0), 0.0), (Heaviside(), -1.0), (TriangleWave(), -2.0)):
        d = fourier_decay_check(spec, ctx.grid, 0)
        rows.append(CheckRow(f"tauberian.fourier.{spec.name}", "tauberian", "dyadic envelope of the spectrum",
                             d.exponent, want, 0.1, abs(d.exponent - want) < 0.1))
    tri = fourier_decay_check(TriangleWave(), ctx.grid, 2)
    rows.append(CheckRow("tauberian.fourier.triangle.k2", "tauberian", "decay of order 2 is consistent",
                         tri.consistent, True, 0.1, tri.consistent))
    return rows


def check_exponent_calculus(ctx):
    rng = np.random.default_rng(VERIFY_SEED)
    worst = 0.0
    for _ in range(10):
        a, b = rng.uniform(0.005, 0.05), rng.uniform(1.0, 3.0)
        k, r = rng.uniform(1.0, 4.0), rng.uniform(0.0, 2.0)
        worst = max(worst, abs(brute_force_slope(a, b, k, r) - selected_scale_slope(a, b, k, r)))
    return [CheckRow("tauberian.exponent_select", "tauberian",
                     "selected scale matches the brute-force optimum", worst, 0.0, 0.05, worst < 0.05)]


def check_quasiasymptotics(ctx):
    rows = []
    for spec, want, tol in ((Delta(0), -1.0, 1e-9), (Constant(1.0), 0.0, 0.05), (Cusp(0.5), 0.5, 0.05)):
        q = quasiasymptotic_exponent(spec, ctx.grid, standard_bump, "origin")
        rows.append(CheckRow(f"tauberian.quasi.{spec.name}", "tauberian", "dilation exponent at the origin",
                             q.alpha, want, tol, (not q.capped) and abs(q.alpha - want) < tol))
    return rows


# ------------------------------------------------------------------ signals

def check_counterexample(ctx):
    origin = 1.0
    n_max = max_translates(ctx.grid, origin)
    # the bump is ~80 cells wide on the base grid; a 4x grid makes the Riemann sum exact to round-off
    fine = ctx.grid.refined(4)
    mass = quad(lambda t: float(standard_bump(np.array([t]))[0]), -0.5, 0.5, epsabs=1e-15, epsrel=1e-13,
                limit=200)[0]
    worst = 0.0
    for eps in np.geomspace(1.0, 1.0 / (n_max + 1), 12):
        measured = float(derivative_lp(counterexample_net_1(None, eps, fine, origin, n_max), 0, 1.0)[0])
        oracle = mass * sum(1.0 / (n + 1.0) ** 2 for n in range(n_max + 1) if eps * (n + 1) >= 1 - 1e-12)
        worst = max(worst, abs(measured - oracle) / oracle)
    rows = [CheckRow("signals.counterexample.l1_tail", "signals", "L1 norm equals the tail partial sum",
                     worst, 0.0, 1e-12, worst < 1e-12)]
    b = origin + 8.0
    mask = Window(0.0, b).mask(ctx.grid)
    n_first = int(np.ceil((b + 0.5 - origin) / 2.0))
    threshold = 1.0 / (n_first + 1)

    def window_max(eps):
        return float(np.max(np.abs(counterexample_net_1(None, eps, ctx.grid, origin, n_max).values[mask])))

    below = max(window_max(e) for e in np.geomspace(0.99 * threshold, 1.0 / (n_max + 1), 6))
    above = window_max(1.0)
    rows.append(CheckRow("signals.counterexample.compact_vanishing", "signals",
                         f"zero on [0, {b:g}] once eps < {threshold:.4g}", below, 0.0, 0,
                         below == 0.0 and above > 0))
    return rows


# ------------------------------------------------------------------ reports

def check_determinism(ctx):
    a = run_analyze(ctx.config, "cusp:tau=0.5").bundle.to_json()
    b = run_analyze(ctx.config, "cusp:tau=0.5").bundle.to_json()
    return [CheckRow("reports.determinism", "reports", "identical input gives identical bundle",
                     a == b, True, 0, a == b)]


CHECKS: list[tuple[str, Callable]] = [
    ("frame.moments", check_frame_moments),
    ("frame.lp_identity", check_lp_identity),
    ("frame.reconstruction", check_reconstruction),
    ("calibration.delta", check_delta_calibration),
    ("calibration.class", check_classification),
    ("calibration.convexity", check_convexity),
    ("calibration.shift", check_scaling_shift),
    ("zygmund.exponent", check_zygmund_exponents),
    ("zygmund.membership", check_membership_agreement),
    ("zygmund.hoermann", check_hoermann),
    ("zygmund.product", check_product_stability),
    ("tauberian.smooth", check_smoothness),
    ("tauberian.fourier", check_fourier_decay),
    ("tauberian.exponent_select", check_exponent_calculus),
    ("tauberian.quasi", check_quasiasymptotics),
    ("signals.counterexample", check_counterexample),
    ("reports.determinism", check_determinism),
]


def run_verify(config: AnalysisConfig | None = None, filter: str | None = None) -> list[CheckRow]:
    """Run every check whose name contains ``filter`` (all when ``None``)."""
    config = AnalysisConfig() if config is None else config
    ctx = Context(config)
    rows: list[CheckRow] = []
    for name, fn in CHECKS:
        if filter and filter not in name:
            continue
        try:
            rows.extend(fn(ctx))
        except (GfregError, ValueError, ArithmeticError) as exc:
            rows.append(CheckRow(name, name.split(".")[0], "check raised", f"{type(exc).__name__}: {exc}",
                                 "no error", 0, False))
    return rows


HEADER = ["id", "tag", "anchor", "measured", "expected", "tol", "verdict"]


def rows_to_csv(rows: list[CheckRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in rows:
        w.writerow(r.cells())
    return buf.getvalue()


def rows_to_table(rows: list[CheckRow]) -> str:
    cells = [HEADER] + [r.cells() for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(HEADER))]
    lines = ["  ".join(c[i].ljust(widths[i]) for i in range(len(HEADER))).rstrip() for c in cells]
    passed = sum(r.passed for r in rows)
    lines.append(f"{passed}/{len(rows)} checks passed")
    return "\n".join(lines) + "\n"
