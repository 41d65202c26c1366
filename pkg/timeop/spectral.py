"""
This file is part of timeop.
timeop builds and checks time operators on a discretized half-line

timeop is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.
"""

import functools
import warnings

import numpy as np
from scipy.linalg import eigh

from .base import ParameterError, DomainError, Report, check_same_grid
from .grid import GridSpec, sample
from .operators import (OperatorMatrix, tsq_friedrichs, hamiltonian,
                        time_candidate, friedrichs_eigenvalues,
                        _second_difference)

__all__ = ['SpectralDecomposition', 'TransformMatrix', 'TimeFunction',
           'TimeDistribution', 'eigensystem', 'operator_sqrt',
           'friedrichs_sqrt', 'friedrichs_sqrt_spectrum', 'sine_kernel',
           'default_time_nodes', 'time_grid', 'sine_transform', 'to_time_rep',
           'time_rep_action_checks', 'time_distribution', 'delta_smearing']

HERMITIAN_TOL = 1E-12
CLAMP = 1E-10


class SpectralDecomposition(object):
  """
  Ascending eigenvalues and quadrature-orthonormal eigenvectors (columns)
  of a selfadjoint OperatorMatrix.
  """

  def __init__(self, eigenvalues, eigenvectors, source, grid, bc_tag='none'):
    self.eigenvalues = eigenvalues
    self.eigenvectors = eigenvectors
    self.source = source
    self.grid = grid
    self.bc_tag = bc_tag

  def __repr__(self):
    return "SpectralDecomposition(%s, n=%d)" % (self.source, self.grid.n)

  def eigenpair_residual(self, op):
    """max_k ||A v_k - lambda_k v_k|| relative to the Frobenius norm of A"""
    R = op.entries.dot(self.eigenvectors) - self.eigenvectors*self.eigenvalues
    return float(np.max(np.sqrt(self.grid.h*np.sum(np.abs(R)**2, axis=0)))
                 / np.linalg.norm(op.entries))

  def orthonormality_defect(self):
    G = self.grid.h * self.eigenvectors.conj().T.dot(self.eigenvectors)
    return float(np.max(np.abs(G - np.eye(self.grid.n))))


def _fix_phases(V):
  """Makes the first nonzero component of every column real positive"""
  scale = np.max(np.abs(V), axis=0)
  first = np.argmax(np.abs(V) > 1E-12*scale, axis=0)
  pivots = V[first, np.arange(V.shape[1])]
  return V * (np.abs(pivots) / pivots)


def eigensystem(op):
  """
  Hermitian eigensystem by similarity with the square-root quadrature
  weights; eigenvectors come back orthonormal under inner().
  """
  defect = op.hermiticity_defect()
  if defect > HERMITIAN_TOL:
    raise DomainError("eigensystem needs a Hermitian operator; %s has "
                      "Hermiticity defect %.3e" % (op.symbol, defect))
  sqrt_w = np.sqrt(op.grid.weights)
  B = (sqrt_w[:, None] * op.entries) / sqrt_w[None, :]
  eigenvalues, Y = eigh(B)
  V = _fix_phases(Y / sqrt_w[:, None])
  return SpectralDecomposition(eigenvalues, V, op.symbol, op.grid, op.bc_tag)


def operator_sqrt(dec):
  """
  Positive square root sum_k sqrt(lambda_k) v_k v_k^dag. Eigenvalues in
  [-eps, 0) with eps = 1e-10 max lambda are clamped to zero.
  """
  lam = dec.eigenvalues
  eps = CLAMP * np.max(np.abs(lam))
  if np.any(lam < -eps):
    raise DomainError("operator_sqrt needs a nonnegative spectrum; smallest "
                      "eigenvalue of %s is %.3e" % (dec.source, lam.min()))
  if np.any(lam < 0):
    warnings.warn("clamping %d negative eigenvalues of %s to zero"
                  % (np.sum(lam < 0), dec.source), RuntimeWarning)
  root = np.sqrt(np.maximum(lam, 0.))
  V = dec.eigenvectors
  entries = (V * root).dot(V.conj().T) * dec.grid.weights[None, :]
  symbol = 'Tsqrt' if dec.source == 'TsqF' else 'derived'
  return OperatorMatrix(entries, dec.grid, dec.bc_tag, symbol)


@functools.lru_cache(maxsize=8)
def friedrichs_sqrt_spectrum(grid):
  """Decomposition of T_F^2 and of its square root, cached per grid"""
  dec = eigensystem(tsq_friedrichs(grid))
  root = SpectralDecomposition(np.sqrt(np.maximum(dec.eigenvalues, 0.)),
                               dec.eigenvectors, 'Tsqrt', grid, dec.bc_tag)
  return dec, root


@functools.lru_cache(maxsize=8)
def friedrichs_sqrt(grid):
  """T_sqrt = +sqrt(T_F^2) on grid"""
  dec, _ = friedrichs_sqrt_spectrum(grid)
  return operator_sqrt(dec)


#########################
## TIME REPRESENTATION ##
#########################

def sine_kernel(grid, t):
  """<E|t> = sqrt(2/(pi hbar)) sin(E t/hbar)"""
  if t < 0:
    raise ParameterError("the spectrum of T_sqrt is [0, inf): t = %r < 0" % (t,))
  return sample('sine', grid, (t,))


def default_time_nodes(grid):
  """t_k = k pi hbar/e_max, k = 1..n"""
  return np.pi * grid.hbar / grid.e_max * np.arange(1, grid.n + 1)


def time_grid(grid):
  """
  The default time nodes as a GridSpec: spacing pi hbar/e_max, n nodes, the
  Dirichlet ends at t = 0 and t = (n+1) pi hbar/e_max.
  """
  dt = np.pi * grid.hbar / grid.e_max
  return GridSpec((grid.n + 1)*dt, grid.n, grid.hbar)


class TimeFunction(object):
  """Samples on the time nodes of a TransformMatrix"""

  def __init__(self, values, t_nodes, t_weights):
    self.values = values
    self.t_nodes = t_nodes
    self.t_weights = t_weights

  def norm(self):
    return float(np.sqrt(np.sum(self.t_weights * np.abs(self.values)**2)))


class TransformMatrix(object):
  """
  Sine transform between energy samples and time samples.

  direction 'to_time' maps grid values to t_nodes, 'to_energy' the reverse.
  t_spectral holds the square roots of the T_F^2 eigenvalues belonging to
  the default time nodes (the stencil's dispersion-corrected labels).
  """

  def __init__(self, entries, grid, t_nodes, t_weights, direction='to_time',
               default=False, rescale=1., t_spectral=None):
    self.entries = entries
    self.grid = grid
    self.t_nodes = t_nodes
    self.t_weights = t_weights
    self.direction = direction
    self.default = default
    self.rescale = rescale
    self.t_spectral = t_spectral

  def adjoint(self):
    """
    Quadrature adjoint: U^dag = W_E^-1 U^H W_t
    """
    if self.direction == 'to_time':
      entries = (self.entries.conj().T * self.t_weights[None, :]
                 / self.grid.weights[:, None])
      direction = 'to_energy'
    else:
      entries = (self.entries.conj().T * self.grid.weights[None, :]
                 / self.t_weights[:, None])
      direction = 'to_time'
    return TransformMatrix(entries, self.grid, self.t_nodes, self.t_weights,
                           direction, self.default, self.rescale,
                           self.t_spectral)

  def isometry_defect(self):
    """(||U^dag U - 1||, ||U U^dag - 1||), Frobenius"""
    U = self.entries if self.direction == 'to_time' else self.adjoint().entries
    Ud = self.adjoint().entries if self.direction == 'to_time' else self.entries
    m, n = U.shape
    return (float(np.linalg.norm(Ud.dot(U) - np.eye(n))),
            float(np.linalg.norm(U.dot(Ud) - np.eye(m))))


def sine_transform(grid, t_nodes=None):
  """
  (Uf)(t_j) = c sum_i w_i sqrt(2/(pi hbar)) sin(E_i t_j/hbar) f_i

  With the default nodes the constant c is fixed by requiring the first
  normalized sine kernel to keep its norm; the resulting U is unitary on the
  truncated space.
  """
  default_nodes = default_time_nodes(grid)
  if t_nodes is None:
    t_nodes = default_nodes
  t_nodes = np.atleast_1d(np.array(t_nodes, dtype=float))
  if np.any(t_nodes < 0):
    raise ParameterError("time nodes must be nonnegative")
  if np.any(np.diff(t_nodes) <= 0):
    raise ParameterError("time nodes must be strictly ascending")
  default = (len(t_nodes) == grid.n
             and np.allclose(t_nodes, default_nodes, rtol=1E-12, atol=0))
  dt = np.pi * grid.hbar / grid.e_max
  if default or len(t_nodes) < 2:
    t_weights = dt * np.ones(len(t_nodes))
  else:
    t_weights = np.gradient(t_nodes)

  entries = (np.sqrt(2/(np.pi*grid.hbar))
             * np.sin(np.outer(t_nodes, grid.nodes)/grid.hbar)
             * grid.weights[None, :])
  rescale = 1.
  t_spectral = None
  if default:
    s = sine_kernel(grid, t_nodes[0]).values
    s = s / np.sqrt(np.sum(grid.weights*np.abs(s)**2))
    Us = entries.dot(s)
    rescale = 1. / np.sqrt(np.sum(t_weights*np.abs(Us)**2))
    entries = rescale * entries
    t_spectral = np.sqrt(friedrichs_eigenvalues(grid))
  return TransformMatrix(entries, grid, t_nodes, t_weights, 'to_time',
                         default, rescale, t_spectral)


def to_time_rep(f, U):
  if U.direction != 'to_time':
    raise ParameterError("to_time_rep needs a to_time TransformMatrix")
  check_same_grid(f, U)
  return TimeFunction(U.entries.dot(f.values), U.t_nodes, U.t_weights)


def _relative(a, b, rows=slice(None)):
  return float(np.linalg.norm((a - b)[rows]) / np.linalg.norm(b[rows]))


def time_rep_action_checks(U):
  """
  How H^2, T_F^2 and T_sqrt act after the sine transform, plus the gap that
  shows H is not i hbar d/dt there.
  """
  if not U.default or U.direction != 'to_time':
    raise ParameterError("time_rep_action_checks needs the default to_time grid")
  grid = U.grid
  report = Report('time_rep', grid)
  Ud = U.adjoint().entries
  Ue = U.entries

  defect_UdU, defect_UUd = U.isometry_defect()
  report.add('unitarity_UdagU', 'sine transform is unitary', defect_UdU, 1E-6)
  report.add('unitarity_UUdag', 'sine transform is unitary', defect_UUd, 1E-6)

  D2 = np.diag(U.t_spectral**2)
  A = Ue.dot(tsq_friedrichs(grid).entries).dot(Ud)
  report.add('tsq_is_t_squared', 'T_F^2 acts as multiplication by t^2',
             np.linalg.norm(A - D2) / np.linalg.norm(D2), 1E-6)

  D1 = np.diag(U.t_spectral)
  C = Ue.dot(friedrichs_sqrt(grid).entries).dot(Ud)
  report.add('tsqrt_is_t', 'T_sqrt|t> = t|t>',
             np.linalg.norm(C - D1) / np.linalg.norm(D1), 1E-6)

  dispersion = abs(U.t_spectral[0] - U.t_nodes[0]) / U.t_nodes[0]
  report.add('dispersion_lowest_mode', 'plumbing', dispersion, 1E-5)

  f = sample('power_exp', grid, (1, 1))
  tgrid = time_grid(grid)
  g = Ue.dot(f.values)
  H = hamiltonian(grid).entries
  lhs = Ue.dot(H.dot(H.dot(f.values)))
  rhs = -grid.hbar**2 * _second_difference(grid.n, tgrid.h, 'dirichlet').dot(g)
  report.add('hsq_is_minus_d2_dt2', 'H^2 acts as -hbar^2 d^2/dt^2',
             _relative(lhs, rhs, slice(2, -2)), 1E-2)

  Hg = Ue.dot(H.dot(f.values))
  iddt = time_candidate(tgrid, 'dirichlet_origin').entries.dot(g)
  gap = np.sqrt(np.sum(U.t_weights*np.abs(Hg - iddt)**2)
                / np.sum(U.t_weights*np.abs(g)**2))
  report.add('h_is_not_i_d_dt', 'H does not act as i hbar d/dt', gap, 0.1, '>=')

  delta_column = to_time_rep(sine_kernel(grid, U.t_nodes[4]), U).values
  peak = np.abs(delta_column[4])
  off_peak = np.max(np.abs(np.delete(delta_column, 4))) / peak
  report.add('delta_column', 'sine kernels are delta normalized', off_peak, 1E-6)
  return report


class TimeDistribution(object):
  """Probabilities p_j of measuring T_sqrt in the cell around t_j"""

  def __init__(self, t_nodes, p):
    self.t_nodes = t_nodes
    self.p = p

  def mode(self):
    return float(self.t_nodes[np.argmax(self.p)])

  def mean(self):
    return float(np.sum(self.t_nodes * self.p))


def time_distribution(psi, U):
  """p_j = |(U psi)(t_j)|^2 dt_j, normalized to sum 1"""
  if psi.norm() == 0:
    raise DomainError("time_distribution needs a nonzero state")
  phi = to_time_rep(psi, U)
  p = np.abs(phi.values)**2 * phi.t_weights
  return TimeDistribution(U.t_nodes, p / np.sum(p))


def delta_smearing(grid, t, probe):
  """
  sum_t' dt' K(t, t') g(t') with K(t, t') = sum_i w_i <t|E_i><E_i|t'> and
  t' over the default time nodes. probe is a vectorized callable g(t').
  Reproduces g on the time nodes; elsewhere it converges as e_max grows.
  """
  t = np.atleast_1d(np.array(t, dtype=float))
  if np.any(t < 0):
    raise ParameterError("smearing points must be nonnegative")
  t_prime = default_time_nodes(grid)
  dt = np.pi * grid.hbar / grid.e_max
  c = 2. / (np.pi*grid.hbar)
  left = np.sin(np.outer(t, grid.nodes)/grid.hbar) * grid.weights[None, :]
  right = np.sin(np.outer(grid.nodes, t_prime)/grid.hbar)
  K = c * left.dot(right)
  return K.dot(dt * probe(t_prime))
