import math

import numpy as np
import pytest

from gfreg import (Cusp, SampledFunction, Window, derivative_lp, derivative_sups, hoelder_norm,
                   hoelder_seminorm, sobolev_seminorm)


def test_lp_norms_of_a_sine_match_closed_form(grid):
    k = 3 * 2 * math.pi / grid.period
    f = SampledFunction(grid, values=np.sin(k * grid.x))
    got = derivative_lp(f, 3, 2.0)
    ref = [math.sqrt(grid.period / 2) * k**j for j in range(4)]
    assert np.allclose(got, ref, rtol=1e-10)
    assert np.allclose(derivative_sups(f, 3), [k**j for j in range(4)], rtol=1e-8)


def test_l1_norm_of_a_sine(grid):
    k = 2 * 2 * math.pi / grid.period
    f = SampledFunction(grid, values=np.sin(k * grid.x))
    assert derivative_lp(f, 0, 1.0)[0] == pytest.approx(2 * grid.period / math.pi, rel=1e-6)


def test_sobolev_seminorm_is_max_over_orders(grid):
    k = 40 * 2 * math.pi / grid.period
    f = SampledFunction(grid, values=np.cos(k * grid.x))
    assert sobolev_seminorm(f, 2) == pytest.approx(k**2, rel=1e-8)
    with pytest.raises(ValueError):
        sobolev_seminorm(f, -1)


@pytest.mark.parametrize("tau", [0.3, 0.5, 0.8])
def test_hoelder_seminorm_of_power_cusp(grid, tau):
    # subadditivity of t^tau caps the quotient at 1, reached with one end at the tip
    c = grid.x[grid.n // 2]
    f = SampledFunction(grid, values=np.abs(grid.x - c) ** tau)
    got = hoelder_seminorm(f, 0, tau, Window.around(c, 1.0))
    assert got == pytest.approx(1.0, rel=1e-12)


def test_hoelder_seminorm_of_linear_ramp(grid):
    c = grid.x[grid.n // 2]
    f = SampledFunction(grid, values=3.0 * (grid.x - c))
    assert hoelder_seminorm(f, 0, 1.0, Window.around(c, 2.0)) == pytest.approx(3.0, rel=1e-12)


def test_hoelder_norm_adds_sup_terms(grid):
    f = SampledFunction(grid, values=np.cos(2 * 2 * math.pi / grid.period * grid.x))
    assert hoelder_norm(f, 0, 1.0) >= hoelder_seminorm(f, 0, 1.0)


def test_hoelder_rejects_bad_arguments(grid):
    f = Cusp(0.5).sample(grid)
    with pytest.raises(ValueError):
        hoelder_seminorm(f, 0, 1.5)
    with pytest.raises(ValueError):
        hoelder_seminorm(f, 0, 0.5, max_gap=grid.spacing / 2)


def test_windowed_sup_is_local(grid):
    c = grid.x[grid.n // 4]
    f = SampledFunction(grid, values=np.exp(-((grid.x - c) ** 2)))
    assert derivative_sups(f, 0, Window.around(c, 0.5))[0] == pytest.approx(1.0, abs=1e-6)
    far = Window.around(c + 20.0, 1.0)
    assert derivative_sups(f, 0, far)[0] < 1e-14


def test_window_validation(grid):
    with pytest.raises(ValueError):
        Window(2.0, 1.0)
    w = Window.around(5.0, 1.0)
    assert w.contains(np.array([4.5, 6.5])).tolist() == [True, False]
    assert Window.full(grid).includes(w)
