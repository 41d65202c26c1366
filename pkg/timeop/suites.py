"""
This file is part of timeop.
timeop builds and checks time operators on a discretized half-line

timeop is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.
"""

import csv
import itertools
import os
import warnings

import numpy as np

from .base import ParameterError, Report
from .grid import (make_grid, sample, inner, norm, vanishes_at_origin,
                   ORIGIN_TOL)
from .operators import (hamiltonian, identity, time_candidate, tsq_friedrichs,
                        friedrichs_eigenvalues, symmetry_defect,
                        deficiency_report, residual_spectrum_witness,
                        witness_tolerance)
from .spectral import (friedrichs_sqrt, friedrichs_sqrt_spectrum,
                       sine_kernel, sine_transform, to_time_rep,
                       time_rep_action_checks, time_distribution,
                       delta_smearing)
from .hft import (hft_forward, real_axis_grid, hft_inverse,
                  conjugate_rep_check, analyticity_check, hardy_decay)
from .algebra import (canonical_residual, variant_commutator_gap,
                      jacobi_residual, lie_closure_check, variant_commutator,
                      tolerance, GAP_MIN, GAP_STABILITY)

__all__ = ['build_suite', 'refinement_sweep', 'write_sweep',
           'convergence_order', 'WITNESS_POINTS', 'dispersion_tolerance']

WITNESS_POINTS = (1j, 1+2j, 3j)
WITNESS_CRITERION = 1E-2
# Relative eigenvalue error of mode k is about (k pi h / e_max)^2 / 12 for
# the three-point Laplacian; DISPERSION_C leaves a margin over 1/12
DISPERSION_C = 0.25


def dispersion_tolerance(grid, k=1):
  return max(1E-4, DISPERSION_C * (k*np.pi*grid.h / grid.e_max)**2)


def _label(expr):
  name, params = expr
  return "%s(%s)" % (name, ",".join("%g" % p for p in params))


def _in_domain(grid, test_functions):
  """Test functions that vanish at the origin, sampled on grid"""
  out = []
  for expr in test_functions:
    f = sample(expr, grid)
    if vanishes_at_origin(f):
      out.append(f)
  return out


############
## SUITES ##
############

def domains_suite(grid, test_functions, companion=None):
  report = Report('domains', grid)
  H = hamiltonian(grid)
  report.add('h_hermitian', 'H is selfadjoint on D(H)', H.hermiticity_defect(), 0.)
  report.add('h_lowest_entry', 'plumbing',
             abs(H.entries[0, 0].real - grid.h) / grid.h, 1E-12)

  T = time_candidate(grid, 'dirichlet_origin')
  Tdag = time_candidate(grid, 'free')
  rows_differ = np.abs(T.entries - Tdag.entries).max(axis=1)
  report.add('t_tdag_first_row_only', 'T and T^dag differ by the condition f(0) = 0',
             np.max(rows_differ[1:]), 0.)

  f = sample('power_exp', grid, (1, 1))
  i = grid.index_of(2.)
  E = grid.nodes[i]
  exact = 1j*grid.hbar*(1 - E)*np.exp(-E)
  report.add('t_derivative', '(Tf)(E) = i hbar df/dE',
             abs(T.apply(f).values[i] - exact), 1E-3)

  report.add('tsq_hermitian', 'Friedrichs extension is selfadjoint',
             tsq_friedrichs(grid).hermiticity_defect(), 1E-12)

  report.add('inner_power_exp', 'plumbing', abs(inner(f, f) - 0.25), 2E-3)
  g = sample('exp', grid, (1,))
  report.add('inner_mixed', 'plumbing', abs(inner(g, f) - 0.25), 2E-3)

  defect = symmetry_defect(Tdag, g, g)
  report.add('boundary_term', '<g|Tf> - <Tg|f> = -i hbar f(0) g*(0)',
             defect.mismatch, 5E-3)
  defect = symmetry_defect(Tdag, f, f)
  report.add('symmetric_on_domain', 'T is symmetric on D(T)', abs(defect.lhs), 5E-3)
  defect = symmetry_defect(Tdag, g, f)
  report.add('boundary_term_mixed', 'boundary term vanishes when g(0) = 0',
             defect.mismatch, 5E-3)
  defect = symmetry_defect(T, g, g)
  report.add('symmetric_with_condition', 'T is symmetric on D(T)',
             defect.mismatch, 5E-3)

  for f in _in_domain(grid, test_functions):
    report.add('origin_value_' + _label(f.expr), 'f(0) = 0 on D(T)',
               abs(f.boundary_value_origin) / np.max(np.abs(f.values)), ORIGIN_TOL)
  return report


def deficiency_suite(grid, test_functions, companion=None):
  report = Report('deficiency', grid)
  expected = {'T': (0, 1), 'Tsq': (1, 1)}
  anchors = {'T': 'T admits no selfadjoint extension',
             'Tsq': 'T^2 has selfadjoint extensions'}
  for which in ('T', 'Tsq'):
    plus = deficiency_report(which, 1, grid)
    minus = deficiency_report(which, -1, grid)
    indices = (plus.index_contribution, minus.index_contribution)
    mismatch = sum(abs(a - b) for a, b in zip(indices, expected[which]))
    report.add(which + '_indices', anchors[which], mismatch, 0)
    for witness, sign in ((plus, '+'), (minus, '-')):
      if witness.l2_member:
        report.add('%s_residual_%s' % (which, sign), anchors[which],
                   witness.residual, witness.tolerance)
  for z in WITNESS_POINTS:
    report.add('witness_z=%s' % z, 'upper half-plane lies in the spectrum of T',
               residual_spectrum_witness(z, grid), witness_tolerance(z, grid),
               criterion=WITNESS_CRITERION)
  return report


def spectra_suite(grid, test_functions, companion=None):
  report = Report('spectra', grid)
  Tsq = tsq_friedrichs(grid)
  dec, root = friedrichs_sqrt_spectrum(grid)
  exact = friedrichs_eigenvalues(grid)
  report.add('friedrichs_closed_form', 'sigma(T_F^2) = [0, inf)',
             np.max(np.abs(dec.eigenvalues - exact)) / np.max(exact), 1E-10)
  report.add('friedrichs_positive', 'sigma(T_F^2) = [0, inf)',
             dec.eigenvalues.min(), 0., '>=')
  lowest = (np.pi*grid.hbar/grid.e_max)**2
  report.add('friedrichs_lowest', 'sigma(T_F^2) = [0, inf)',
             abs(dec.eigenvalues[0] - lowest) / lowest, dispersion_tolerance(grid))
  report.add('eigenpairs', 'plumbing', dec.eigenpair_residual(Tsq), 1E-8)
  report.add('orthonormal', 'plumbing', dec.orthonormality_defect(), 1E-10)

  Ts = friedrichs_sqrt(grid)
  square = Ts.entries.dot(Ts.entries)
  report.add('sqrt_squared', 'T_sqrt := +sqrt(T_F^2)',
             np.linalg.norm(square - Tsq.entries) / np.linalg.norm(Tsq.entries), 1E-8)
  report.add('sqrt_hermitian', 'T_sqrt is selfadjoint', Ts.hermiticity_defect(), 1E-12)
  report.add('sqrt_nonnegative', 'sigma(T_sqrt) = [0, inf)',
             root.eigenvalues.min(), 0., '>=')
  k = np.arange(1, 6)
  t_k = k*np.pi*grid.hbar/grid.e_max
  report.add('sqrt_lowest_modes', 'T_sqrt|t> = t|t>',
             np.max(np.abs(root.eigenvalues[:5] - t_k) / t_k),
             dispersion_tolerance(grid, 5))
  return report


def time_rep_suite(grid, test_functions, companion=None):
  U = sine_transform(grid)
  report = time_rep_action_checks(U)
  Ud = U.adjoint()

  g = sample('exp', grid, (1,))
  U1 = sine_transform(grid, [1.])
  value = to_time_rep(g, U1).values[0]
  x = 1./grid.hbar
  report.add('closed_form_t1', 'U maps energy to time representation',
             abs(value - np.sqrt(2/(np.pi*grid.hbar))*x/(1 + x**2)), 1E-3)

  f = sample('power_exp', grid, (1, 1))
  back = Ud.entries.dot(U.entries.dot(f.values))
  report.add('roundtrip', 'U is unitary',
             np.linalg.norm(back - f.values) / np.linalg.norm(f.values), 1E-6)
  report.add('norm_preserved', 'U is unitary',
             abs(to_time_rep(f, U).norm() - norm(f)) / norm(f), 1E-6)

  def bump(t):
    return np.exp(-(t - 5.)**2)
  nodes = U.t_nodes[:200]
  report.add('smeared_delta_on_grid', 'sine kernels are delta normalized',
             np.max(np.abs(delta_smearing(grid, nodes, bump) - bump(nodes))), 1E-10)
  return report


def hft_suite(grid, test_functions, companion=None):
  report = Report('hft', grid)
  g = sample('exp', grid, (1,))
  c = 1/np.sqrt(2*np.pi*grid.hbar)
  for t in (0, 1j, 1):
    exact = c / (1 - 1j*t/grid.hbar)
    report.add('closed_form_t=%s' % t, 'holomorphic Fourier transform',
               abs(hft_forward(g, t) - exact), 1E-3)

  t_real = real_axis_grid(grid)
  exprs = []
  for expr in [('power_exp', (1, 1)), ('gaussian', (5, 1))] + list(test_functions):
    if _label(expr) not in [_label(e) for e in exprs]:
      exprs.append(expr)
  with warnings.catch_warnings():
    # The dual window reproduces node values whatever the tail size
    warnings.simplefilter('ignore', RuntimeWarning)
    for expr in exprs:
      f = sample(expr, grid)
      back = hft_inverse(hft_forward(f, t_real), t_real, grid.nodes, grid.hbar).value
      report.add('roundtrip_' + _label(expr), 'inverse holomorphic Fourier transform',
                 np.linalg.norm(back - f.values) / np.linalg.norm(f.values), 1E-4)

  f = sample('power_exp', grid, (1, 1))
  residuals = conjugate_rep_check(f, 1j)
  report.add('conjugate_h', '(H phi)(t) = -i hbar dphi/dt', residuals.h_residual, 1E-4)
  t = 1 + 1j
  residuals = conjugate_rep_check(f, t)
  report.add('conjugate_t', '(T phi)(t) = t phi(t)', residuals.t_residual,
             max(1E-4, abs(t)**3 * grid.h**2 / (3*grid.hbar**2)))

  coarse = analyticity_check(g, 1j, 1E-3)
  fine = analyticity_check(g, 1j, 5E-4)
  report.add('cauchy_riemann', 'phi is holomorphic in the upper half-plane',
             coarse, 1E-5)
  report.add('cauchy_riemann_order', 'phi is holomorphic in the upper half-plane',
             coarse / fine, 3., '>=')

  for expr in test_functions:
    decay = hardy_decay(sample(expr, grid))
    report.add('hardy_decay_' + _label(expr), 'phi vanishes as Im t grows',
               np.max(decay[1:] / decay[:-1]), 1.)

  h = sample('power_exp', grid, (2, 1))
  linear = hft_forward(2*f + h*(1j), t) - (2*hft_forward(f, t) + 1j*hft_forward(h, t))
  report.add('linearity', 'plumbing', abs(linear), 1E-12)
  return report


def _generators(grid):
  """The operators the Jacobi identity is checked on, by symbol"""
  return [('H', hamiltonian(grid)),
          ('T', time_candidate(grid, 'dirichlet_origin')),
          ('Tdag', time_candidate(grid, 'free')),
          ('TsqF', tsq_friedrichs(grid)),
          ('Tsqrt', friedrichs_sqrt(grid)),
          ('I', variant_commutator(grid)),
          ('1', identity(grid))]


def algebra_suite(grid, test_functions, companion=None):
  report = Report('algebra', grid)
  tol = tolerance(grid)
  if companion is None:
    companion = grid.refined()
  for f in _in_domain(grid, test_functions):
    label = _label(f.expr)
    canonical = canonical_residual(f)
    report.add('canonical_' + label, '[T, H] = i hbar 1',
               canonical.relative_residual, tol)
    gap = variant_commutator_gap(f, reference=companion)
    anchor = 'T_sqrt does not canonically commute with H'
    report.add('variant_gap_' + label, anchor, gap.relative_residual, GAP_MIN, '>=')
    report.add('variant_gap_reference_' + label, anchor,
               gap.reference_residual, GAP_MIN, '>=')
    report.add('variant_gap_stability_' + label, anchor,
               abs(gap.relative_residual - gap.reference_residual) / gap.relative_residual,
               GAP_STABILITY)
    for check in lie_closure_check(f, reference=companion).checks:
      report.add(check.id + '_' + label, check.anchor, check.measured,
                 check.tolerance, check.relation)

  f = sample('power_exp', grid, (1, 1))
  for triple in itertools.combinations_with_replacement(_generators(grid), 3):
    names = ",".join(name for name, _ in triple)
    A, B, C = (operator for _, operator in triple)
    report.add('jacobi_' + names, 'Jacobi identity', jacobi_residual(A, B, C, f), 1E-10)
  return report


def distribution_suite(grid, test_functions, companion=None):
  report = Report('distribution', grid)
  U = sine_transform(grid)
  k = 5
  p = time_distribution(sine_kernel(grid, U.t_nodes[k]), U)
  report.add('sine_kernel_concentrated', 'T_sqrt|t> = t|t>', p.p[k], 0.99, '>=')
  p = time_distribution(sample('exp', grid, (1,)), U)
  report.add('mode_exp', 'measurement statistics of T_sqrt',
             abs(p.mode() - grid.hbar), U.t_weights[0])
  for expr in test_functions:
    p = time_distribution(sample(expr, grid), U)
    report.add('normalized_' + _label(expr), 'plumbing', abs(np.sum(p.p) - 1), 1E-9)
  return report


BUILDERS = {
  'domains': domains_suite,
  'deficiency': deficiency_suite,
  'spectra': spectra_suite,
  'time_rep': time_rep_suite,
  'hft': hft_suite,
  'algebra': algebra_suite,
  'distribution': distribution_suite,
}


def build_suite(suite, grid, test_functions, companion=None):
  """
  Runs one named suite on grid and returns its Report. companion is the
  grid stability checks compare against (default: the refined grid).
  """
  if suite not in BUILDERS:
    raise ParameterError("unknown suite %r; known: %s"
                         % (suite, ", ".join(sorted(BUILDERS))))
  return BUILDERS[suite](grid, test_functions, companion)


###########
## SWEEP ##
###########

def convergence_order(h, residuals):
  """Slope of log(residual) against log(h)"""
  h = np.asarray(h, dtype=float)
  residuals = np.asarray(residuals, dtype=float)
  if np.any(residuals <= 0):
    return np.nan
  return float(np.polyfit(np.log(h), np.log(residuals), 1)[0])


def refinement_sweep(e_max, n_list, hbar, test_functions):
  """
  Residuals of the convergence-sensitive checks on every grid, with the
  fitted order per check.

  Returns (rows, staircases, report): rows are (n, h, check_id, residual,
  fitted_order), staircases map n to the T_sqrt eigenvalues.
  """
  if len(n_list) < 3:
    raise ParameterError("a refinement sweep needs at least 3 grid sizes")
  raw = []
  staircases = {}
  for i, n in enumerate(n_list):
    grid = make_grid(e_max, n, hbar)
    # next grid of the sweep, or the previous one for the finest
    m = n_list[i + 1] if i + 1 < len(n_list) else n_list[i - 1]
    reference = make_grid(e_max, m, hbar)
    for f in _in_domain(grid, test_functions):
      label = _label(f.expr)
      raw.append((n, grid.h, 'canonical_' + label,
                  canonical_residual(f).relative_residual))
      raw.append((n, grid.h, 'variant_gap_' + label,
                  variant_commutator_gap(f, reference=reference).relative_residual))
    g = sample('exp', grid, (1,))
    raw.append((n, grid.h, 'boundary_term',
                symmetry_defect(time_candidate(grid, 'free'), g, g).mismatch))
    for z in WITNESS_POINTS:
      raw.append((n, grid.h, 'witness_z=%s' % z, residual_spectrum_witness(z, grid)))
    _, root = friedrichs_sqrt_spectrum(grid)
    lowest = np.pi*hbar/e_max
    raw.append((n, grid.h, 'sqrt_lowest_mode', abs(root.eigenvalues[0] - lowest)))
    staircases[n] = root.eigenvalues

  orders = {}
  for check_id in sorted(set(row[2] for row in raw)):
    h = [row[1] for row in raw if row[2] == check_id]
    r = [row[3] for row in raw if row[2] == check_id]
    orders[check_id] = convergence_order(h, r)
  rows = [row + (orders[row[2]],) for row in raw]

  finest = make_grid(e_max, n_list[-1], hbar)
  report = Report('sweep', finest)
  for check_id, order in sorted(orders.items()):
    if check_id.startswith('canonical_'):
      report.add('order_' + check_id, '[T, H] = i hbar 1', abs(order - 2.), 0.3)
    elif check_id.startswith('variant_gap_'):
      report.add('order_' + check_id, 'T_sqrt does not canonically commute with H',
                 abs(order), 0.5)
    elif check_id == 'boundary_term':
      report.add('order_' + check_id, '<g|Tf> - <Tg|f> = -i hbar f(0) g*(0)',
                 order, 1., '>=')
    elif check_id.startswith('witness_'):
      report.add('order_' + check_id, 'upper half-plane lies in the spectrum of T',
                 order, 1., '>=')
  eigenvalues = staircases[n_list[-1]]
  m = max(len(eigenvalues) // 20, 2)
  slope = np.polyfit(np.arange(1, m + 1), eigenvalues[:m], 1)[0]
  report.add('staircase_slope', 'T_sqrt|t> = t|t>',
             abs(slope - np.pi*hbar/e_max) / (np.pi*hbar/e_max), 1E-2)
  return rows, staircases, report


def write_sweep(directory, rows, staircases):
  """convergence.csv and staircase_n<N>.csv; returns the paths written"""
  paths = []
  path = os.path.join(directory, 'convergence.csv')
  with open(path, 'w', newline='') as f:
    writer = csv.writer(f)
    writer.writerow(['n', 'h', 'check_id', 'residual', 'fitted_order'])
    for n, h, check_id, residual, order in rows:
      writer.writerow([n, repr(h), check_id, repr(residual), repr(order)])
  paths.append(path)
  for n, eigenvalues in sorted(staircases.items()):
    path = os.path.join(directory, 'staircase_n%d.csv' % n)
    with open(path, 'w', newline='') as f:
      writer = csv.writer(f)
      writer.writerow(['k', 'eigenvalue'])
      for k, value in enumerate(eigenvalues, 1):
        writer.writerow([k, repr(float(value))])
    paths.append(path)
  return paths
