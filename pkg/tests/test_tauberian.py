import math

import numpy as np
import pytest

from gfreg import (Constant, Cusp, Delta, Gaussian, Heaviside, TriangleWave, association_check,
                   derivative, dilated_pairing, embed, exponent_select, fourier_decay_check,
                   g_infinity_test, local_decay_map, optimal_slope, quasiasymptotic_exponent,
                   scale_net, sobolev_boundedness, standard_bump, wavelet_transform, zero_net)
from gfreg.tauberian import brute_force_slope, selected_scale_slope


def test_wavelet_locates_cusp(frame, grid):
    spec = Cusp(0.5)
    prof = local_decay_map(wavelet_transform(spec, 1, frame))
    assert prof.p_hat.min() == pytest.approx(0.5, abs=0.05)
    c = spec.singular_points(grid)[0]
    assert abs(prof.argmin - c) < 2 * (prof.x[1] - prof.x[0])


def test_wavelet_map_csv(frame):
    wmap = wavelet_transform(Heaviside(), 1, frame)
    lines = wmap.to_csv().splitlines()
    assert len(lines) == len(wmap.y_grid) + 1
    assert lines[0].startswith("y,")


@pytest.mark.parametrize("spec,smooth", [(Gaussian(sigma=1.0), True), (Constant(1.0), True),
                                         (Delta(0), False), (Heaviside(), False), (Cusp(0.5), False)])
def test_smoothness_verdicts(frame, eps, spec, smooth):
    assert g_infinity_test(embed(spec, frame), 3, None, eps).smooth is smooth


def test_smoothness_needs_three_orders(frame):
    with pytest.raises(ValueError):
        g_infinity_test(embed(Delta(0), frame), 2)


def test_dilated_pairing_of_delta_is_rho_at_zero(grid):
    eps = 0.25
    got = dilated_pairing(Delta(0), standard_bump, eps, grid)
    assert got.real == pytest.approx(math.exp(-1) / eps, rel=1e-9)


@pytest.mark.parametrize("spec,alpha", [(Delta(0), -1.0), (Constant(1.0), 0.0), (Cusp(0.5), 0.5)])
def test_quasiasymptotic_exponents(grid, spec, alpha):
    est = quasiasymptotic_exponent(spec, grid)
    assert est.alpha == pytest.approx(alpha, abs=0.05)


def test_cancelling_pairing_is_capped(grid):
    est = quasiasymptotic_exponent(derivative(Delta(0), 1), grid)
    assert est.capped


@pytest.mark.parametrize("spec,k", [(Delta(0), 0), (Heaviside(), 1), (TriangleWave(), 2)])
def test_fourier_decay(grid, spec, k):
    res = fourier_decay_check(spec, grid, k)
    assert res.exponent == pytest.approx(-k, abs=0.1)
    assert res.consistent


def test_exponent_select_and_slopes():
    assert exponent_select(0.01, 2.0, 2.0, 1.0) == pytest.approx(0.015)
    assert selected_scale_slope(0.01, 2.0, 2.0, 1.0) == pytest.approx(-1.985)
    assert optimal_slope(0.01, 2.0, 2.0, 1.0) == pytest.approx(-2 + 0.03 / 2.01)
    with pytest.raises(ValueError):
        exponent_select(0.0, 1.0, 1.0, 1.0)


@pytest.mark.parametrize("a,b,k,r", [(0.01, 2, 2, 1), (0.5, 1, 1, 0), (0.05, 3, 4, 2), (1.0, 1.0, 3, 1.5)])
def test_brute_force_matches_closed_form_optimum(a, b, k, r):
    assert brute_force_slope(a, b, k, r) == pytest.approx(optimal_slope(a, b, k, r), abs=1e-6)


def test_association(frame, grid):
    res = association_check(embed(Delta(0), frame), Delta(0))
    assert res.associated and res.strong_rate == pytest.approx(8.0)
    scaled = association_check(scale_net(embed(Delta(0), frame), -1.0), Delta(0))
    assert not scaled.associated
    assert association_check(zero_net(grid), Constant(0.0)).associated


def test_sobolev_boundedness(frame, eps):
    heav = sobolev_boundedness(embed(Heaviside(), frame), 1, p=2, eps_grid=eps)
    assert not heav.bounded
    assert heav.exponents == pytest.approx((0.0, -0.5), abs=0.02)
    assert sobolev_boundedness(embed(Gaussian(sigma=1.0), frame), 2, eps_grid=eps).bounded
