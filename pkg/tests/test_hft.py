#! /usr/bin/env python

import warnings

import numpy as np
import pytest

import timeop
from timeop import (make_grid, sample, HalfPlanePoint, hft_forward,
                    real_axis_grid, hft_inverse, conjugate_rep_check,
                    analyticity_check, hardy_decay)


def test_forward_closed_form():
    grid = make_grid(50, 999)
    f = sample('exp', grid, (1,))
    assert abs(hft_forward(f, 0) - 0.39894) <= 1E-3
    assert abs(hft_forward(f, HalfPlanePoint(1j)) - 0.19947) <= 1E-3
    assert abs(hft_forward(f, 1) - 0.19947*(1 + 1j)) <= 1E-3
    t = np.array([0, 1j, 1])
    np.testing.assert_allclose(hft_forward(f, t), 1/np.sqrt(2*np.pi)/(1 - 1j*t), atol=1E-3)


def test_forward_rejects_lower_half_plane():
    f = sample('exp', make_grid(50, 99), (1,))
    with pytest.raises(timeop.ParameterError):
        HalfPlanePoint(-1j)
    with pytest.raises(timeop.ParameterError):
        hft_forward(f, 1 - 0.5j)


def test_linearity():
    grid = make_grid(50, 499)
    f = sample('power_exp', grid, (1, 1))
    g = sample('gaussian', grid, (5, 1))
    t = 0.3 + 0.7j
    combined = hft_forward(2*f + g*(-1j), t)
    assert combined == pytest.approx(2*hft_forward(f, t) - 1j*hft_forward(g, t), abs=1E-14)


def test_roundtrip():
    grid = make_grid(50, 999)
    t = real_axis_grid(grid)
    assert len(t) == 2*(grid.n + 1)
    assert t[0] == pytest.approx(-t[-1] - (t[1] - t[0]))
    f = sample('power_exp', grid, (1, 1))
    with pytest.warns(RuntimeWarning):
        back = hft_inverse(hft_forward(f, t), t, grid.nodes)
    assert back.warning is not None
    error = np.linalg.norm(back.value - f.values) / np.linalg.norm(f.values)
    assert error <= 1E-4

    g = sample('gaussian', grid, (5, 1))
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', RuntimeWarning)
        back = hft_inverse(hft_forward(g, t), t, grid.nodes)
    error = np.linalg.norm(back.value - g.values) / np.linalg.norm(g.values)
    assert error <= 1E-4


def test_inverse_of_zero():
    grid = make_grid(50, 99)
    t = real_axis_grid(grid)
    back = hft_inverse(np.zeros(len(t)), t, 1.)
    assert back.value == 0
    assert back.warning is None


def test_conjugate_representation():
    f = sample('power_exp', make_grid(50, 999), (1, 1))
    assert conjugate_rep_check(f, 1j).h_residual <= 1E-4
    f = sample('power_exp', make_grid(50, 1999), (1, 1))
    residuals = conjugate_rep_check(f, 1 + 1j)
    assert residuals.t_residual <= 1E-4
    assert residuals.h_residual <= 1E-4


def test_conjugate_representation_rejects():
    grid = make_grid(50, 99)
    with pytest.raises(timeop.DomainError):
        conjugate_rep_check(sample('exp', grid, (1,)), 1j)
    # The H identity alone does not need f(0) = 0
    residuals = conjugate_rep_check(sample('exp', grid, (1,)), 1j, identities=('H',))
    assert residuals.t_residual is None
    with pytest.raises(timeop.ParameterError):
        conjugate_rep_check(sample('power_exp', grid, (1, 1)), 1.)


def test_analyticity():
    f = sample('exp', make_grid(50, 999), (1,))
    coarse = analyticity_check(f, 1j, 1E-3)
    fine = analyticity_check(f, 1j, 5E-4)
    assert coarse <= 1E-5
    assert 3. < coarse/fine < 5.
    with pytest.raises(timeop.ParameterError):
        analyticity_check(f, 1E-6j, 1E-3)


def test_hardy_decay():
    grid = make_grid(50, 999)
    for expr in [('power_exp', (1, 1)), ('power_exp', (2, 1)), ('gaussian', (5, 1))]:
        decay = hardy_decay(sample(expr, grid))
        assert np.all(np.diff(decay) < 0)


if __name__ == '__main__':
    test_forward_closed_form()
    test_roundtrip()
    test_conjugate_representation()
