import math

import numpy as np
import pytest

from gfreg import GridSpec, SampledFunction, trig_resample
from gfreg.grid import spectral_sup


def test_acceptance_grid_constants(grid):
    assert grid.nyquist == pytest.approx(256.0)
    assert grid.scale_floor == pytest.approx(1 / 256)
    assert grid.dxi == pytest.approx(1 / 8)


def test_default_scales_span_five_octaves(grid):
    s = grid.default_scales()
    assert s.size == 32
    assert s[0] == pytest.approx(1 / 8)
    assert s[-1] == pytest.approx(1 / 256)
    assert np.all(np.diff(s) < 0)


@pytest.mark.parametrize("n", [100, 128, 3000])
def test_grid_rejects_bad_sizes(n):
    with pytest.raises(ValueError):
        GridSpec(n, 2 * math.pi)


def test_spectral_derivative_of_trig_mode(grid):
    k = 5 * 2 * math.pi / grid.period
    f = SampledFunction(grid, values=np.sin(k * grid.x))
    for order, expect in [(1, k * np.cos(k * grid.x)), (2, -k**2 * np.sin(k * grid.x)),
                          (3, -k**3 * np.cos(k * grid.x))]:
        assert np.max(np.abs(f.derivative(order).real - expect)) < 1e-6 * k**order


def test_spectral_sup_finds_off_grid_peak(small_grid):
    # peak of cos(k(x - x0)) sits between samples; sample max under-reads it
    k = 7 * 2 * math.pi / small_grid.period
    x0 = 0.5 * small_grid.spacing
    f = SampledFunction(small_grid, values=3.0 * np.cos(k * (small_grid.x - x0)))
    assert spectral_sup(f.spectrum) == pytest.approx(3.0, rel=1e-6)


def test_trig_resample_is_exact_for_band_limited_data(small_grid):
    k = 3 * 2 * math.pi / small_grid.period
    x = np.linspace(0, small_grid.period, 64, endpoint=False)
    f = trig_resample(x, np.cos(k * x) + 0.5, small_grid)
    assert np.max(np.abs(f.real - (np.cos(k * small_grid.x) + 0.5))) < 1e-12


def test_refined_grid_keeps_period(grid):
    fine = grid.refined(4)
    assert fine.n == 4 * grid.n and fine.period == grid.period
