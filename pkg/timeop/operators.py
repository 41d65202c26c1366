"""
This file is part of timeop.
timeop builds and checks time operators on a discretized half-line

timeop is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.
"""

import numpy as np
from scipy.sparse import spdiags

from .base import ParameterError, check_same_grid
from .grid import WaveFunction

__all__ = ['OperatorMatrix', 'SymmetryDefect', 'DeficiencyReport',
           'hamiltonian', 'time_candidate', 'tsq_friedrichs', 'tsq_maximal',
           'identity', 'friedrichs_eigenvalues', 'symmetry_defect',
           'deficiency_report', 'deficiency_indices',
           'residual_spectrum_witness', 'witness_tolerance']

BC_TAGS = ('none', 'dirichlet_origin', 'dirichlet_both')
SYMBOLS = ('H', 'T', 'Tdag', 'Tsq', 'TsqF', 'Tsqrt', 'I', '1', 'derived')

# Relative growth of the squared norm under e_max doubling that still
# counts as square integrable
L2_GROWTH_TOL = 1E-6
# Deficiency residual tolerance: max(1e-3, C*h^2)
DEFICIENCY_TOL = 1E-3
DEFICIENCY_TOL_C = 0.4


class OperatorMatrix(object):
  """
  Dense complex matrix acting on WaveFunctions of one grid, tagged with the
  boundary condition its stencil encodes.
  """

  def __init__(self, entries, grid, bc_tag='none', symbol='derived'):
    entries = np.array(entries, dtype=complex)
    if entries.shape != (grid.n, grid.n):
      raise ParameterError("operator must be %d x %d, got %s"
                           % (grid.n, grid.n, entries.shape))
    if bc_tag not in BC_TAGS:
      raise ParameterError("bc_tag must be one of %s" % (BC_TAGS,))
    self.entries = entries
    self.entries.flags.writeable = False
    self.grid = grid
    self.bc_tag = bc_tag
    self.symbol = symbol

  def __repr__(self):
    return "OperatorMatrix(%s, %s, n=%d)" % (self.symbol, self.bc_tag, self.grid.n)

  def apply(self, f):
    check_same_grid(self, f)
    return WaveFunction(self.entries.dot(f.values), self.grid, name=None)

  def hermiticity_defect(self):
    """max |A - A^H| relative to max |A|"""
    scale = np.max(np.abs(self.entries))
    if scale == 0:
      return 0.
    return float(np.max(np.abs(self.entries - self.entries.conj().T)) / scale)

  def is_hermitian(self, tol=1E-12):
    return self.hermiticity_defect() <= tol

  def norm(self):
    """Frobenius norm"""
    return float(np.linalg.norm(self.entries))


class SymmetryDefect(object):
  """lhs = <g|Af> - <Ag|f>, the boundary term it should equal, and their mismatch"""

  def __init__(self, lhs, boundary_term):
    self.lhs = complex(lhs)
    self.boundary_term = complex(boundary_term)
    self.mismatch = abs(self.lhs - self.boundary_term) / (abs(self.boundary_term) + 1)

  def __repr__(self):
    return "SymmetryDefect(lhs=%s, boundary_term=%s, mismatch=%.3g)" % (
      self.lhs, self.boundary_term, self.mismatch)


class DeficiencyReport(object):
  """
  Witness for one deficiency index: the candidate solution of
  A^dag f = (+/-) i f, whether it is square integrable, and its residual.
  """

  def __init__(self, operator, sign, candidate, exponent, l2_member,
               norm_growth, residual, tolerance):
    self.operator = operator
    self.sign = sign
    self.candidate = candidate
    self.exponent = exponent
    self.l2_member = bool(l2_member)
    self.norm_growth = norm_growth
    self.residual = float(residual)
    self.tolerance = tolerance
    self.index_contribution = int(self.l2_member and self.residual <= tolerance)

  def __repr__(self):
    return "DeficiencyReport(%s, %s, %s, L2=%s, residual=%.3g, contribution=%d)" % (
      self.operator, '+' if self.sign > 0 else '-', self.candidate,
      self.l2_member, self.residual, self.index_contribution)


##############
## STENCILS ##
##############

def _first_derivative(n, h, origin):
  """
  Second-order d/dE on n nodes. Central differences in the interior;
  origin='dirichlet_origin' closes the first row with the ghost value
  f(0) = 0, origin='free' with the one-sided second-order formula. The last
  row is always one-sided (truncation point).
  """
  ones = np.ones(n)
  diags = np.vstack((-ones, ones)) / (2.*h)
  D = spdiags(diags, [-1, 1], n, n, format='lil')
  if origin == 'free':
    D[0, 0:3] = np.array([-3., 4., -1.]) / (2.*h)
  elif origin != 'dirichlet_origin':
    raise ParameterError("origin closure must be 'dirichlet_origin' or 'free'")
  D[n-1, n-3:n] = np.array([1., -4., 3.]) / (2.*h)
  return D.toarray()


def _second_difference(n, h, closure):
  """
  Three-point d^2/dE^2 on n nodes. closure='dirichlet' uses ghost values 0
  at E = 0 and E = e_max; closure='free' uses one-sided second-order
  four-point rows at both ends.
  """
  ones = np.ones(n)
  diags = np.vstack((ones, -2.*ones, ones)) / h**2
  D = spdiags(diags, [-1, 0, 1], n, n, format='lil')
  if closure == 'free':
    D[0, :] = 0.
    D[n-1, :] = 0.
    D[0, 0:4] = np.array([2., -5., 4., -1.]) / h**2
    D[n-1, n-4:n] = np.array([-1., 4., -5., 2.]) / h**2
  elif closure != 'dirichlet':
    raise ParameterError("closure must be 'dirichlet' or 'free'")
  return D.toarray()


###############
## OPERATORS ##
###############

def hamiltonian(grid):
  """(Hf)(E) = E f(E): real diagonal, eigenvalues in (0, e_max)"""
  return OperatorMatrix(np.diag(grid.nodes), grid, 'none', 'H')


def identity(grid):
  return OperatorMatrix(np.eye(grid.n), grid, 'none', '1')


def time_candidate(grid, domain='dirichlet_origin'):
  """
  i hbar d/dE. domain='dirichlet_origin' gives T (f(0) = 0), domain='free'
  gives its adjoint T^dag with the condition at the origin lifted. Not
  Hermitian; the two differ only in the first row.
  """
  if domain == 'dirichlet_origin':
    symbol, bc_tag = 'T', 'dirichlet_origin'
  elif domain == 'free':
    symbol, bc_tag = 'Tdag', 'none'
  else:
    raise ParameterError("domain must be 'dirichlet_origin' or 'free', not %r" % (domain,))
  D = _first_derivative(grid.n, grid.h, domain)
  return OperatorMatrix(1j*grid.hbar*D, grid, bc_tag, symbol)


def tsq_friedrichs(grid):
  """
  Friedrichs extension of T^2 = -hbar^2 d^2/dE^2: Dirichlet ghost values at
  both ends, Hermitian, positive.
  """
  D2 = _second_difference(grid.n, grid.h, 'dirichlet')
  return OperatorMatrix(-grid.hbar**2 * D2, grid, 'dirichlet_both', 'TsqF')


def tsq_maximal(grid):
  """-hbar^2 d^2/dE^2 with no boundary condition: the adjoint of T^2"""
  D2 = _second_difference(grid.n, grid.h, 'free')
  return OperatorMatrix(-grid.hbar**2 * D2, grid, 'none', 'Tsq')


def friedrichs_eigenvalues(grid):
  """(2 hbar^2/h^2)(1 - cos(k pi/(n+1))), k = 1..n, ascending"""
  k = np.arange(1, grid.n + 1)
  return 2*grid.hbar**2 / grid.h**2 * (1 - np.cos(k*np.pi/(grid.n + 1)))


###################
## BOUNDARY TERM ##
###################

def symmetry_defect(op, f, g):
  """
  Discrete check of <g|Tf> = -i hbar f(0) g*(0) + <Tg|f>.

  The pairing is evaluated on the grid augmented with the origin sample
  (trapezoid weight h/2 there), with the operator's derivative stencil.
  For op = T the origin samples are zero by its boundary condition, so the
  boundary term vanishes and the check is plain symmetry.
  """
  if op.symbol not in ('T', 'Tdag'):
    raise ParameterError("symmetry_defect needs T or Tdag, got %s" % op.symbol)
  check_same_grid(op, f, g)
  grid = op.grid
  if op.bc_tag == 'dirichlet_origin':
    f0 = g0 = 0.
  else:
    f0 = f.boundary_value_origin
    g0 = g.boundary_value_origin
  F = np.hstack([f0, f.values])
  G = np.hstack([g0, g.values])
  W = grid.h * np.ones(grid.n + 1)
  W[0] = grid.origin_weight
  D = 1j*grid.hbar * _first_derivative(grid.n + 1, grid.h, 'free')
  TF = D.dot(F)
  TG = D.dot(G)
  lhs = np.sum(W*np.conj(G)*TF) - np.sum(W*np.conj(TG)*F)
  boundary_term = -1j*grid.hbar * f0 * np.conj(g0)
  return SymmetryDefect(lhs, boundary_term)


########################
## DEFICIENCY INDICES ##
########################

def _exponential_norm2(grid, k):
  """Squared quadrature norm of exp(kE) on grid"""
  with np.errstate(over='ignore', invalid='ignore'):
    return float(np.sum(grid.weights * np.abs(np.exp(k*grid.nodes))**2))


def deficiency_report(which, sign, grid):
  """
  Candidate solution of A^dag f = sign*i*f for A = T or A = T^2 ('Tsq').

  For T the adjoint is i hbar d/dE with no condition at the origin and the
  solution is exp(sign*E/hbar). For T^2 the adjoint is -hbar^2 d^2/dE^2 and
  the candidate is exp(kE) with k the root of k^2 = -sign*i/hbar^2 with
  Re k < 0. Square integrability is decided by the growth of the norm when
  e_max is doubled at fixed spacing.
  """
  if sign not in (1, -1, '+', '-'):
    raise ParameterError("sign must be +1 or -1")
  if sign in ('+', '-'):
    sign = 1 if sign == '+' else -1
  hbar = grid.hbar
  if which == 'T':
    k = sign / hbar
    adjoint = time_candidate(grid, 'free')
    label = "exp(%sE/hbar)" % ('+' if sign > 0 else '-')
  elif which == 'Tsq':
    roots = np.array([1, -1]) * np.sqrt(complex(-sign*1j)) / hbar
    k = roots[np.argmin(roots.real)]
    adjoint = tsq_maximal(grid)
    label = "exp((%.6g%+.6gi)E)" % (k.real, k.imag)
  else:
    raise ParameterError("which must be 'T' or 'Tsq', not %r" % (which,))

  norm2 = _exponential_norm2(grid, k)
  norm2_extended = _exponential_norm2(grid.extended(), k)
  growth = norm2_extended / norm2 - 1 if np.isfinite(norm2_extended) else np.inf
  l2_member = bool(np.isfinite(growth) and growth <= L2_GROWTH_TOL)

  with np.errstate(over='ignore', invalid='ignore'):
    values = np.exp(k*grid.nodes)
    # Scale before applying the stencil so growing candidates stay finite
    values = values / np.max(np.abs(values))
    r = adjoint.entries.dot(values) - sign*1j*values
    residual = np.sqrt(np.sum(grid.weights*np.abs(r)**2)
                       / np.sum(grid.weights*np.abs(values)**2))
  tolerance = max(DEFICIENCY_TOL, DEFICIENCY_TOL_C * grid.h**2)
  return DeficiencyReport(which, sign, label, k, l2_member, growth,
                          residual, tolerance)


def deficiency_indices(which, grid):
  """(d+, d-) assembled from the two witnesses"""
  return (deficiency_report(which, 1, grid).index_contribution,
          deficiency_report(which, -1, grid).index_contribution)


#######################
## RESIDUAL SPECTRUM ##
#######################

def residual_spectrum_witness(z, grid):
  """
  Relative residual of (T^dag - conj(z)) g_z with g_z = exp(-i conj(z) E/hbar).

  For Im z > 0, g_z is square integrable and an eigenfunction of T^dag with
  eigenvalue conj(z), so z lies in the residual spectrum of T.
  """
  z = complex(z)
  if not z.imag > 0:
    raise ParameterError("z must lie in the open upper half-plane, got %r" % (z,))
  Tdag = time_candidate(grid, 'free')
  g = np.exp(-1j*np.conj(z)*grid.nodes/grid.hbar)
  r = Tdag.entries.dot(g) - np.conj(z)*g
  return float(np.sqrt(np.sum(grid.weights*np.abs(r)**2)
                       / np.sum(grid.weights*np.abs(g)**2)))


def witness_tolerance(z, grid):
  """max(1e-2, |z|^3 h^2/(3 hbar^2)): leading central-difference error of g_z"""
  return max(1E-2, abs(complex(z))**3 * grid.h**2 / (3*grid.hbar**2))
