#! /usr/bin/env python

import numpy as np
import pytest

import timeop
from timeop import make_grid, sample, inner, norm, integrate


def test_make_grid():
    grid = make_grid(50, 999, 1)
    assert grid.h == pytest.approx(0.05, rel=1E-15)
    assert grid.nodes[0] == pytest.approx(0.05)
    assert grid.nodes[-1] == pytest.approx(49.95)
    assert np.all(np.diff(grid.nodes) > 0)
    assert np.all(grid.weights == grid.h)

    grid = make_grid(1, 16, 1)
    np.testing.assert_allclose(grid.nodes, np.arange(1, 17)/17., rtol=1E-14)
    assert 0 < grid.nodes[0] and grid.nodes[-1] < grid.e_max


def test_make_grid_rejects():
    with pytest.raises(timeop.ParameterError):
        make_grid(50, 15, 1)
    with pytest.raises(timeop.ParameterError):
        make_grid(0, 100, 1)
    with pytest.raises(timeop.ParameterError):
        make_grid(50, 100, -1)


def test_grids_compare_by_parameters():
    assert make_grid(50, 99, 1) == make_grid(50., 99, 1.)
    assert hash(make_grid(50, 99, 1)) == hash(make_grid(50., 99, 1.))
    assert make_grid(50, 99).refined().n == 199
    extended = make_grid(50, 99).extended()
    assert extended.h == pytest.approx(make_grid(50, 99).h)
    assert extended.e_max == 100.


def test_sample():
    grid = make_grid(50, 999, 1)
    f = sample('power_exp', grid, (1, 1))
    i = grid.index_of(1.)
    assert f.values[i] == pytest.approx(np.exp(-1))
    assert f.boundary_value_origin == 0
    assert sample('exp', grid, (1,)).boundary_value_origin == 1
    assert sample(('gaussian', (5, 1)), grid).name == 'gaussian(5, 1)'
    with pytest.raises(timeop.ParameterError):
        sample('laguerre', grid, (1,))
    with pytest.raises(timeop.ParameterError):
        sample('exp', grid, (1, 2))


def test_values_are_read_only():
    f = sample('exp', make_grid(10, 32), (1,))
    with pytest.raises(ValueError):
        f.values[0] = 0.


def test_inner():
    grid = make_grid(50, 999, 1)
    f = sample('power_exp', grid, (1, 1))
    g = sample('exp', grid, (1,))
    assert abs(inner(f, f) - 0.25) <= 2E-3
    assert abs(inner(g, f) - 0.25) <= 2E-3
    assert inner(f.with_values(np.zeros(grid.n)), f) == 0
    h = f.with_values(f.values*(1 + 2j))
    assert inner(h, g) == pytest.approx(np.conj(inner(g, h)))
    assert inner(h, h).imag == 0 and inner(h, h).real >= 0


def test_inner_of_complex_state_is_real():
    grid = make_grid(50, 999, 1)
    f = sample('power_exp', grid, (1, 1))
    h = f.with_values(f.values*np.exp(0.3j*grid.nodes)*(0.7 - 1.9j))
    copy = h.with_values(h.values.copy())
    for g in (h, copy):
        value = inner(g, h)
        assert value.imag == 0
        assert value.real == pytest.approx(norm(h)**2)
    g = sample('gaussian', grid, (5, 1)).with_values(
        sample('gaussian', grid, (5, 1)).values*(1 - 1j))
    assert inner(g, h) == np.conj(inner(h, g))


def test_inner_grid_mismatch():
    f = sample('exp', make_grid(50, 99), (1,))
    g = sample('exp', make_grid(50, 199), (1,))
    with pytest.raises(timeop.GridMismatchError):
        inner(f, g)


def test_quadrature_converges_second_order():
    errors = []
    for n in (99, 199):
        errors.append(abs(integrate(sample('exp', make_grid(50, n), (1,))) - 1))
    assert 3.5 < errors[0]/errors[1] < 4.5
    f = sample('gaussian', make_grid(50, 99), (5, 1))
    assert norm(f)**2 == pytest.approx(np.sqrt(np.pi), rel=1E-10)


def test_truncation():
    # a e_max > 30 leaves a tail below 1e-12
    f = sample('exp', make_grid(40, 399), (1,))
    assert abs(f.values[-1]) < 1E-12


def test_vanishes_at_origin():
    grid = make_grid(50, 999)
    assert timeop.vanishes_at_origin(sample('power_exp', grid, (1, 1)))
    assert timeop.vanishes_at_origin(sample('gaussian', grid, (5, 1)))
    assert not timeop.vanishes_at_origin(sample('exp', grid, (1,)))


if __name__ == '__main__':
    test_make_grid()
    test_sample()
    test_inner()
