#! /usr/bin/env python

import itertools

import numpy as np
import pytest

import timeop
from timeop import (make_grid, sample, hamiltonian, time_candidate,
                    tsq_friedrichs, friedrichs_sqrt, commutator,
                    apply_commutator, canonical_residual,
                    variant_commutator_gap, jacobi_residual,
                    variant_commutator, lie_closure_check, identity)


def test_commutator_basics():
    grid = make_grid(10, 64)
    H = hamiltonian(grid)
    T = time_candidate(grid)
    assert np.all(commutator(H, H).entries == 0)
    np.testing.assert_allclose(commutator(T, H).entries, -commutator(H, T).entries)
    v = sample('power_exp', grid, (1, 1)).values
    np.testing.assert_allclose(apply_commutator(T, H, v), commutator(T, H).entries.dot(v),
                               atol=1E-12)
    with pytest.raises(timeop.GridMismatchError):
        commutator(H, hamiltonian(make_grid(10, 128)))


def test_canonical_commutator():
    residuals = []
    for n in (999, 1999):
        report = canonical_residual(sample('power_exp', make_grid(50, n), (1, 1)))
        assert report.verdict == 'canonical'
        assert report.relative_residual <= report.tolerance
        residuals.append(report.relative_residual)
    assert residuals[0] <= 5E-3
    assert 3.5 < residuals[0]/residuals[1] < 4.5


def test_canonical_commutator_order_on_coarse_grids():
    # the origin rows count; dropping them lowers the fitted order
    h, residuals = [], []
    for n in (63, 127, 255):
        f = sample('power_exp', make_grid(20, n), (1, 1))
        h.append(f.grid.h)
        residuals.append(canonical_residual(f).relative_residual)
    order = np.polyfit(np.log(h), np.log(residuals), 1)[0]
    assert abs(order - 2) <= 0.3


def test_canonical_commutator_needs_origin_zero():
    with pytest.raises(timeop.DomainError):
        canonical_residual(sample('exp', make_grid(50, 99), (1,)))


def test_variant_commutator_gap():
    grid = make_grid(50, 999)
    for expr in [('power_exp', (1, 1)), ('gaussian', (5, 1))]:
        report = variant_commutator_gap(sample(expr, grid))
        assert report.pair == ('Tsqrt', 'H')
        assert report.verdict == 'non_canonical'
        assert report.relative_residual >= 0.1
        assert report.reference_residual >= 0.1
        assert report.reference_n == 1999
        assert report.established

    # Same computation with T in place of T_sqrt
    contrast = variant_commutator_gap(sample('power_exp', grid, (1, 1)), operator='T')
    assert contrast.verdict == 'canonical'
    with pytest.raises(timeop.ParameterError):
        variant_commutator_gap(sample('power_exp', grid, (1, 1)), operator='H')


def test_variant_gap_verdict_follows_tolerance(monkeypatch):
    grid = make_grid(50, 499)
    f = sample('power_exp', grid, (1, 1))
    # an unmeetable stability bound must not turn the verdict canonical
    monkeypatch.setattr(timeop.algebra, 'GAP_STABILITY', 0.)
    report = variant_commutator_gap(f, reference=make_grid(50, 999))
    assert report.relative_residual > report.tolerance
    assert report.verdict == 'non_canonical'
    assert report.established is False
    assert report.reference_n == 999


def test_variant_gap_on_damped_sine():
    grid = make_grid(50, 999)
    t5 = 5*np.pi/grid.e_max
    f = sample('damped_sine', grid, (t5, 0.5))
    report = variant_commutator_gap(f)
    assert report.relative_residual > 10*canonical_residual(f).relative_residual


def test_jacobi():
    grid = make_grid(20, 199)
    f = sample('power_exp', grid, (1, 1))
    H = hamiltonian(grid)
    T = time_candidate(grid, 'dirichlet_origin')
    Tdag = time_candidate(grid, 'free')
    Ts = friedrichs_sqrt(grid)
    I = variant_commutator(grid)
    assert I.symbol == 'I'
    assert variant_commutator(make_grid(20, 199)) is I
    assert jacobi_residual(H, H, H, f) == 0
    assert jacobi_residual(Ts, H, I, f) <= 1E-10
    assert jacobi_residual(H, T, Tdag, f) <= 1E-10
    assert jacobi_residual(tsq_friedrichs(grid), T, H, f) <= 1E-10


def test_jacobi_on_every_generator_triple():
    grid = make_grid(20, 99)
    f = sample('power_exp', grid, (1, 1))
    generators = [hamiltonian(grid), time_candidate(grid, 'dirichlet_origin'),
                  time_candidate(grid, 'free'), tsq_friedrichs(grid),
                  friedrichs_sqrt(grid), variant_commutator(grid), identity(grid)]
    triples = list(itertools.combinations_with_replacement(generators, 3))
    assert len(triples) == 84
    for A, B, C in triples:
        assert jacobi_residual(A, B, C, f) <= 1E-10, (A.symbol, B.symbol, C.symbol)


def test_lie_closure():
    grid = make_grid(50, 499)
    report = lie_closure_check(sample('power_exp', grid, (1, 1)))
    assert report.passed, report.failures()
    # Closures of the T algebra hold exactly away from the boundary rows
    assert report['closure_tsq_h'].measured <= 1E-10
    assert report['closure_tsq_t'].measured <= 1E-10
    assert report['enveloping_span'].measured >= timeop.SPAN_THRESHOLD
    assert report['enveloping_span_reference'].measured >= timeop.SPAN_THRESHOLD


if __name__ == '__main__':
    test_canonical_commutator()
    test_variant_commutator_gap()
    test_lie_closure()
