"""
This file is part of timeop.
timeop builds and checks time operators on a discretized half-line

timeop is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

Holomorphic Fourier transform of functions supported on [0, inf):

  phi(t) = (2 pi hbar)^-1/2 int_0^inf dE f(E) exp(i E t/hbar),   Im t >= 0
  f(E)   = (2 pi hbar)^-1/2 int dt phi(t) exp(-i E t/hbar),       t real
"""

import warnings

import numpy as np

from .base import ParameterError, DomainError
from .grid import vanishes_at_origin
from .operators import hamiltonian, time_candidate

__all__ = ['HalfPlanePoint', 'InverseTransform', 'ConjugateResiduals',
           'hft_forward', 'real_axis_grid', 'hft_inverse',
           'conjugate_rep_check', 'analyticity_check', 'hardy_decay',
           'DECAY_TOL']

# |phi| at the ends of the real window, relative to its maximum
DECAY_TOL = 1E-8


class HalfPlanePoint(object):
  """t in the closed upper half-plane"""

  def __init__(self, t):
    t = complex(t)
    if t.imag < 0:
      raise ParameterError("t = %r lies below the real axis; the transform "
                           "need not converge there" % (t,))
    self.t = t

  def __repr__(self):
    return "HalfPlanePoint(%r)" % (self.t,)

  def __complex__(self):
    return self.t


def _as_t(t):
  if isinstance(t, HalfPlanePoint):
    return t.t
  t = np.asarray(t, dtype=complex)
  if np.any(t.imag < 0):
    raise ParameterError("t must satisfy Im t >= 0")
  return t


def hft_forward(f, t):
  """
  Trapezoid rule over [0, e_max) including the origin sample. t may be a
  HalfPlanePoint, a number or an array of points.
  """
  t = _as_t(t)
  grid = f.grid
  phase = np.exp(1j*np.multiply.outer(t, grid.nodes)/grid.hbar)
  total = grid.origin_weight*f.boundary_value_origin + phase.dot(grid.weights*f.values)
  out = total / np.sqrt(2*np.pi*grid.hbar)
  if np.ndim(out) == 0:
    return complex(out)
  return out


def real_axis_grid(grid):
  """
  Symmetric real-t window dual to the energy grid:
  t_j = j pi hbar/e_max, j = -(n+1)..n
  """
  dt = np.pi * grid.hbar / grid.e_max
  return dt * np.arange(-(grid.n + 1), grid.n + 1)


class InverseTransform(object):
  """Recovered f(E) with the decay warning, if any"""

  def __init__(self, value, warning=None):
    self.value = value
    self.warning = warning

  def __repr__(self):
    return "InverseTransform(%r, warning=%r)" % (self.value, self.warning)


def hft_inverse(phi_samples, t_nodes, E, hbar=1.):
  """
  Inverse transform on a uniform real-t window. On real_axis_grid(grid)
  the grid samples come back to roundoff.
  """
  phi = np.asarray(phi_samples, dtype=complex)
  t_nodes = np.asarray(t_nodes, dtype=float)
  if phi.shape != t_nodes.shape:
    raise ParameterError("need one phi sample per t node")
  E = np.asarray(E, dtype=float)
  if np.any(E < 0):
    raise ParameterError("E must be nonnegative")
  warning = None
  scale = np.max(np.abs(phi)) if phi.size else 0.
  if scale > 0:
    tail = max(abs(phi[0]), abs(phi[-1])) / scale
    if tail >= DECAY_TOL:
      warning = ("phi has not decayed at the ends of the t window: "
                 "|phi_end|/max|phi| = %.2e" % tail)
      warnings.warn(warning, RuntimeWarning)
  dt = t_nodes[1] - t_nodes[0]
  phase = np.exp(-1j*np.multiply.outer(E, t_nodes)/hbar)
  value = dt * phase.dot(phi) / np.sqrt(2*np.pi*hbar)
  if np.ndim(value) == 0:
    value = complex(value)
  return InverseTransform(value, warning)


class ConjugateResiduals(object):

  def __init__(self, h_residual, t_residual):
    self.h_residual = h_residual
    self.t_residual = t_residual

  def __repr__(self):
    return "ConjugateResiduals(h=%r, t=%r)" % (self.h_residual, self.t_residual)


def conjugate_rep_check(f, t, identities=('H', 'T')):
  """
  (H phi)(t) = -i hbar dphi/dt and (T phi)(t) = t phi(t).

  The t derivative is a central difference with step 1e-3 max(1, |t|) along
  the real direction. The T image takes its origin sample from the forward
  difference i hbar f_1/h, the closure under which the discrete pairing
  sums by parts without a boundary remainder.
  """
  t = complex(_as_t(t))
  if not t.imag > 0:
    raise ParameterError("conjugate_rep_check needs Im t > 0, got %r" % (t,))
  grid = f.grid
  phi = hft_forward(f, t)
  h_residual = t_residual = None
  if 'T' in identities and not vanishes_at_origin(f):
    raise DomainError("the T identity needs f(0) = 0; %s has f(0) = %r"
                      % (f.name or 'f', f.boundary_value_origin))
  if 'H' in identities:
    delta = 1E-3 * max(1., abs(t))
    dphi = (hft_forward(f, t + delta) - hft_forward(f, t - delta)) / (2*delta)
    Hf = f.with_values(hamiltonian(grid).entries.dot(f.values), 0.)
    h_residual = abs(hft_forward(Hf, t) + 1j*grid.hbar*dphi) / (abs(phi) + 1)
  if 'T' in identities:
    T = time_candidate(grid, 'dirichlet_origin')
    Tf = f.with_values(T.entries.dot(f.values), 1j*grid.hbar*f.values[0]/grid.h)
    t_residual = abs(hft_forward(Tf, t) - t*phi) / (abs(phi) + 1)
  return ConjugateResiduals(h_residual, t_residual)


def analyticity_check(f, t, delta):
  """
  Cauchy-Riemann residual of phi at t: the difference quotients along the
  real and imaginary directions agree for a holomorphic phi.
  """
  t = complex(_as_t(t))
  if not delta > 0 or not t.imag - delta > 0:
    raise ParameterError("analyticity_check needs Im t > delta > 0; got "
                         "t = %r, delta = %r" % (t, delta))
  along_real = (hft_forward(f, t + delta) - hft_forward(f, t - delta)) / (2*delta)
  along_imag = (hft_forward(f, t + 1j*delta) - hft_forward(f, t - 1j*delta)) / (2j*delta)
  return float(abs(along_real - along_imag))


def hardy_decay(f, heights=(1., 10., 100.)):
  """|phi(i s)| at each height s; decreases for every family member"""
  return np.abs(hft_forward(f, 1j*np.asarray(heights, dtype=float)))
