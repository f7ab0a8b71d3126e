import math

import pytest

from gfreg import (Cusp, Delta, Gaussian, Heaviside, TriangleWave, Weierstrass, band_sups, embed,
                   generalized_zygmund_membership, hoelder_class_membership, hoermann_membership,
                   lowpass_sup, product_zygmund_check, zygmund_exponent, zygmund_functional)
from gfreg.zygmund import octave_leaders


@pytest.mark.parametrize("spec,r", [(Weierstrass(0.3), 0.3), (Weierstrass(0.7), 0.7), (Cusp(0.5), 0.5),
                                    (TriangleWave(), 1.0), (Heaviside(), 0.0), (Delta(0), -1.0)])
def test_zygmund_exponent(frame, spec, r):
    est = zygmund_exponent(spec, frame)
    assert not est.capped
    assert est.value == pytest.approx(r, abs=0.05)


def test_smooth_input_is_capped(frame):
    est = zygmund_exponent(Gaussian(sigma=1.0), frame)
    assert est.capped and est.value == 4.0 and est.fit is None


def test_octave_leaders_take_one_max_per_octave():
    import numpy as np
    scales = 2.0 ** -np.linspace(0, 3, 13)[1:]
    centres, leaders = octave_leaders(scales, np.arange(12.0))
    assert len(centres) == len(leaders) == 3
    assert list(leaders) == [2.0, 6.0, 10.0]  # last sample of octaves 0, 1, 2; octave 3 is partial


def test_zygmund_functional_is_bounded_only_at_or_below_exponent(frame):
    w = Weierstrass(0.5)
    low = zygmund_functional(w, 0.5, frame)
    high = zygmund_functional(w, 0.9, frame)
    assert math.isfinite(low) and high > 5 * low
    # zero mean and no mode inside the low-pass band
    assert lowpass_sup(w, frame) == 0.0
    assert lowpass_sup(Cusp(0.5), frame) > 0


def test_band_sups_shape(frame, grid):
    import numpy as np
    eta = np.geomspace(1 / 8, 1 / 256, 10)
    assert band_sups(Cusp(0.5), frame, eta).shape == (10,)


@pytest.mark.parametrize("spec,r,member", [(Weierstrass(0.3), 0.3, True), (Weierstrass(0.3), 0.5, False),
                                           (Cusp(0.5), 0.3, True), (Cusp(0.5), 0.9, False)])
def test_zygmund_membership(frame, eps, spec, r, member):
    assert generalized_zygmund_membership(embed(spec, frame), r, 0.0, frame, eps).member is member


def test_hoelder_membership(frame, eps):
    net = embed(Cusp(0.5), frame)
    assert hoelder_class_membership(net, 0, 0.5, 0.0, eps_grid=eps).member
    assert not hoelder_class_membership(net, 0, 0.9, 0.0, eps_grid=eps).member


def test_hoermann_regimes(frame, eps):
    checks = hoermann_membership(embed(Weierstrass(0.5), frame), 0.5, frame, eps)
    assert [c.regime for c in checks] == ["bounded", "power", "power", "power"]
    assert all(c.passed for c in checks)


def test_product_constant_is_stable_under_refinement(frame, grid):
    from gfreg import build_frame
    coarse = product_zygmund_check(Weierstrass(0.3), Weierstrass(0.6), 0.3, 0.6, frame)
    fine = product_zygmund_check(Weierstrass(0.3), Weierstrass(0.6), 0.3, 0.6, build_frame(grid.refined(2)))
    assert coarse.constant > 0
    assert abs(fine.constant / coarse.constant - 1) < 0.25
    assert coarse.product_norm == pytest.approx(coarse.constant * coarse.norm1 * coarse.norm2)
