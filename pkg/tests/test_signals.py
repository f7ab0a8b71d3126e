import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import zeta

from gfreg import (Constant, Cusp, Delta, Gaussian, Heaviside, SpecGridMismatch, SpecParseError,
                   TriangleWave, Trig, Weierstrass, class_combine, counterexample_net_1, derivative,
                   embed, load_csv, parse_spec, standard_bump, tail_sum)
from gfreg.signals import cusp_coefficients, max_translates


@pytest.mark.parametrize("tau", [0.3, 0.5, 0.9, 1.0])
def test_cusp_coefficients_match_quadrature(tau):
    got = cusp_coefficients(tau, 8)
    for k in range(9):
        ref = quad(lambda s: abs(2 * math.sin(s / 2)) ** tau * math.cos(k * s), 0, 2 * math.pi,
                   limit=200)[0] / (2 * math.pi)
        assert got[k] == pytest.approx(ref, abs=1e-12)


def test_cusp_samples_match_closed_form_away_from_tip(grid):
    spec = Cusp(0.5)
    c = spec.singular_points(grid)[0]
    far = np.abs(grid.x - c) > 2.0
    err = np.abs(spec.sample(grid).real - spec.value(grid, grid.x))[far]
    assert err.max() < 1e-3


def test_heaviside_coefficients_match_quadrature(grid):
    spec = Heaviside()
    c = spec.singular_points(grid)[0]
    L = grid.period
    got = spec.spectrum(grid)
    for k in (0, 1, 2, 3, 7, -5):
        xi = 2 * math.pi * k / L
        re = quad(lambda x: math.cos(xi * x), c, c + L / 2)[0] / L
        im = -quad(lambda x: math.sin(xi * x), c, c + L / 2)[0] / L
        assert got[k] == pytest.approx(complex(re, im), abs=1e-12)


def test_weierstrass_matches_direct_cosine_sum(grid):
    spec = Weierstrass(0.3)
    J = spec.terms(grid)
    assert 2.0**J <= grid.nyquist / 2 < 2.0 ** (J + 1)
    direct = sum(2.0 ** (-0.3 * j) * np.cos(2.0**j * grid.x) for j in range(J + 1))
    assert np.max(np.abs(spec.sample(grid).real - direct)) < 1e-11


def test_weierstrass_rejects_unresolved_terms(grid):
    with pytest.raises(SpecGridMismatch):
        Weierstrass(0.5, J=8).spectrum(grid)


def test_gaussian_and_triangle_samples(grid):
    g = Gaussian(sigma=1.0)
    c = g.params()["center"] if g.params().get("center") is not None else grid.period / 2
    vals = g.sample(grid).real
    assert vals.max() == pytest.approx(1.0, abs=1e-3)
    tri = TriangleWave().sample(grid).real
    assert np.all(np.isfinite(tri)) and tri.max() > tri.min()


def test_delta_spectrum_is_unit_mass(grid):
    assert Delta(0).spectrum(grid)[0] * grid.period == pytest.approx(1.0)
    d1 = Delta(1).spectrum(grid)
    assert d1[0] == 0


def test_known_calibrations():
    assert Delta(2).known_calibration(1) == 4.0
    assert Cusp(0.5).known_calibration(0) == 0.0
    assert Cusp(0.5).known_calibration(2) == pytest.approx(1.5)
    assert Weierstrass(0.3).known_calibration(1) == pytest.approx(0.7)


def test_derivative_sum_spectrum(grid):
    d = derivative(Delta(0), 2)
    assert np.allclose(d.spectrum(grid), Delta(2).spectrum(grid))


@pytest.mark.parametrize("text", ["delta", "delta:m=2", "cusp:tau=0.5", "weierstrass:tau=0.3,J=5",
                                  "gaussian:sigma=2", "trig:modes=3", "constant:value=2",
                                  "heaviside", "triangle"])
def test_parse_round_trip(text):
    spec = parse_spec(text)
    again = parse_spec(spec.to_string())
    assert type(again) is type(spec) and again.params() == spec.params()


@pytest.mark.parametrize("text", ["bogus", "delta:m=", "delta:x=1", "delta:m=1.5", "cusp:tau=2",
                                  "delta:", "cusp:tau=abc"])
def test_parse_errors(text):
    with pytest.raises(SpecParseError):
        parse_spec(text)


def test_load_csv_resamples(tmp_path, small_grid):
    k = 2 * 2 * math.pi / small_grid.period
    x = np.linspace(0, small_grid.period, 200, endpoint=False)
    path = tmp_path / "sig.csv"
    np.savetxt(path, np.column_stack([x, np.sin(k * x)]), delimiter=",")
    s = load_csv(path, small_grid)
    assert np.max(np.abs(s.sample(small_grid).real - np.sin(k * small_grid.x))) < 1e-10


def test_load_csv_rejects_wrong_columns(tmp_path, small_grid):
    path = tmp_path / "bad.csv"
    np.savetxt(path, np.ones((10, 3)), delimiter=",")
    with pytest.raises(SpecParseError):
        load_csv(path, small_grid)


def test_tail_sum_matches_hurwitz_zeta(grid):
    n_max = max_translates(grid)
    assert n_max == 24
    for eps in (1.0, 0.5, 0.1, 1 / 20, 1 / 25):
        n0 = max(0, math.ceil(1 / eps - 1 - 1e-9))
        ref = zeta(2, n0 + 1) - zeta(2, n_max + 2)
        assert tail_sum(eps, n_max) == pytest.approx(ref, rel=1e-12)


def test_counterexample_l1_norm_matches_quadrature(grid):
    fine = grid.refined(4)
    mass = quad(lambda x: float(standard_bump(np.array([x]))[0]), -0.5, 0.5, epsabs=1e-15)[0]
    for eps in (1.0, 0.2, 0.05):
        f = counterexample_net_1(None, eps, fine)
        l1 = fine.spacing * np.abs(f.values).sum()
        assert l1 == pytest.approx(mass * tail_sum(eps, 24), rel=1e-10)


def test_counterexample_vanishes_left_of_active_support(grid):
    f = counterexample_net_1(None, 0.1, grid)
    first_active = 1.0 + 2.0 * 9
    assert np.all(f.values.real[grid.x < first_active - 0.5] == 0)


def test_class_combine():
    assert class_combine((2, 1.0), (3, 0.5), "sum") == {"r_at_least": 2, "p_at_most": 1.0}
    assert class_combine((math.inf, 0.0), (1, -math.inf), "product") == {"r_at_least": 1,
                                                                          "p_at_most": -math.inf}
    with pytest.raises(ValueError):
        class_combine((0, 0), (0, 0), "quotient")


def test_embed_of_delta_is_mollifier(frame):
    net = embed(Delta(0), frame)
    assert net.known_exponents[0] == 1.0
    f = net(0.05)
    assert f.real.max() == pytest.approx(f.values.real.max())
    assert f.grid == frame.grid


def test_constant_and_trig_are_smooth_specs(grid):
    assert np.allclose(Constant(2.0).sample(grid).real, 2.0)
    assert np.all(np.isfinite(Trig(3).sample(grid).real))
