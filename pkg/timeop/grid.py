"""
This file is part of timeop.
timeop builds and checks time operators on a discretized half-line

timeop is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.
"""

import numpy as np

from .base import ParameterError, check_same_grid

__all__ = ['GridSpec', 'WaveFunction', 'FAMILY', 'make_grid', 'sample',
           'resample', 'inner', 'norm', 'integrate', 'vanishes_at_origin',
           'ORIGIN_TOL']

# |f(0)| below this fraction of max|f| counts as f(0) = 0
ORIGIN_TOL = 1E-5


class GridSpec(object):
  """
  Truncated uniform discretization of L^2([0, e_max), dE).

  Interior nodes E_i = i*h, i = 1..n, h = e_max/(n+1). The endpoints E = 0
  and E = e_max are not nodes: Dirichlet data lives off-grid. All interior
  quadrature weights equal h; origin_weight = h/2 is the trapezoid weight
  of the off-grid origin sample, used when a function does not vanish there.
  """

  def __init__(self, e_max, n, hbar=1.):
    self.e_max = float(e_max)
    self.n = int(n)
    self.hbar = float(hbar)
    self.h = self.e_max / (self.n + 1)
    self.origin_weight = self.h / 2.
    self.nodes = self.h * np.arange(1, self.n + 1)
    self.weights = self.h * np.ones(self.n)
    self.nodes.flags.writeable = False
    self.weights.flags.writeable = False

  def _key(self):
    return (self.e_max, self.n, self.hbar)

  def __eq__(self, other):
    return isinstance(other, GridSpec) and self._key() == other._key()

  def __ne__(self, other):
    return not self.__eq__(other)

  def __hash__(self):
    return hash(self._key())

  def __repr__(self):
    return "GridSpec(e_max=%r, n=%r, hbar=%r)" % self._key()

  def refined(self):
    """Same e_max and hbar, half the spacing"""
    return GridSpec(self.e_max, 2*self.n + 1, self.hbar)

  def extended(self):
    """Same spacing and hbar, twice the truncation point"""
    return GridSpec(2*self.e_max, 2*self.n + 1, self.hbar)

  def index_of(self, E):
    """Index of the node closest to E"""
    return int(np.argmin(np.abs(self.nodes - E)))


class WaveFunction(object):
  """
  Complex samples of an L^2 function on a GridSpec.

  boundary_value_origin is the analytic f(0) when known, else extrapolated
  from the first samples.
  """

  def __init__(self, values, grid, boundary_value_origin=None, name=None,
               expr=None):
    values = np.array(values, dtype=complex)
    if values.shape != (grid.n,):
      raise ParameterError("WaveFunction needs %d values, got shape %s"
                           % (grid.n, values.shape))
    self.values = values
    self.values.flags.writeable = False
    self.grid = grid
    if boundary_value_origin is None:
      # Quadratic extrapolation through the first three nodes
      boundary_value_origin = 3*values[0] - 3*values[1] + values[2]
    self.boundary_value_origin = complex(boundary_value_origin)
    self.name = name
    # (family name, params) when sampled from the analytic family
    self.expr = expr

  def __repr__(self):
    return "WaveFunction(%s on %r)" % (self.name or 'samples', self.grid)

  def norm(self):
    return norm(self)

  def with_values(self, values, boundary_value_origin=None, name=None):
    """New WaveFunction on the same grid"""
    return WaveFunction(values, self.grid, boundary_value_origin, name)

  def __add__(self, other):
    check_same_grid(self, other)
    return WaveFunction(self.values + other.values, self.grid,
                        self.boundary_value_origin + other.boundary_value_origin)

  def __mul__(self, scalar):
    return WaveFunction(scalar*self.values, self.grid,
                        scalar*self.boundary_value_origin, self.name)

  __rmul__ = __mul__


#####################
## ANALYTIC FAMILY ##
#####################

def _power_exp(E, hbar, k, a):
  return E**k * np.exp(-a*E)

def _power_exp_origin(hbar, k, a):
  return 1. if k == 0 else 0.

def _exp(E, hbar, a):
  return np.exp(-a*E)

def _exp_origin(hbar, a):
  return 1.

def _gaussian(E, hbar, mu, sigma):
  return np.exp(-(E - mu)**2 / (2*sigma**2))

def _gaussian_origin(hbar, mu, sigma):
  return np.exp(-mu**2 / (2*sigma**2))

def _sine(E, hbar, t):
  return np.sqrt(2/(np.pi*hbar)) * np.sin(E*t/hbar)

def _sine_origin(hbar, t):
  return 0.

def _damped_sine(E, hbar, t, a):
  return np.sin(E*t/hbar) * np.exp(-a*E)

def _damped_sine_origin(hbar, t, a):
  return 0.

# name -> (sampler, origin value, parameter names)
FAMILY = {
  'power_exp': (_power_exp, _power_exp_origin, ('k', 'a')),
  'exp': (_exp, _exp_origin, ('a',)),
  'gaussian': (_gaussian, _gaussian_origin, ('mu', 'sigma')),
  'sine': (_sine, _sine_origin, ('t',)),
  'damped_sine': (_damped_sine, _damped_sine_origin, ('t', 'a')),
}


def make_grid(e_max, n, hbar=1.):
  """
  Validated GridSpec; e_max > 0, n >= 16, hbar > 0
  """
  if not e_max > 0:
    raise ParameterError("e_max must be positive, got %r" % (e_max,))
  if not hbar > 0:
    raise ParameterError("hbar must be positive, got %r" % (hbar,))
  if int(n) != n or n < 16:
    raise ParameterError("n must be an integer >= 16, got %r" % (n,))
  return GridSpec(e_max, int(n), hbar)


def sample(expr, grid, params=()):
  """
  Samples a member of the analytic family on grid.

  expr is a family name ('power_exp', 'exp', 'gaussian', 'sine',
  'damped_sine') with params, or a (name, params) pair as parsed from a
  configuration file.
  """
  if not isinstance(expr, str):
    expr, params = expr
  if expr not in FAMILY:
    raise ParameterError("unknown test function '%s'; known: %s"
                         % (expr, ', '.join(sorted(FAMILY))))
  sampler, origin, names = FAMILY[expr]
  params = tuple(float(p) for p in params)
  if len(params) != len(names):
    raise ParameterError("'%s' takes parameters %s, got %r" % (expr, names, params))
  label = "%s(%s)" % (expr, ", ".join("%g" % p for p in params))
  return WaveFunction(sampler(grid.nodes, grid.hbar, *params), grid,
                      origin(grid.hbar, *params), label, (expr, params))


def resample(f, grid):
  """The family member behind f, sampled on another grid"""
  if f.expr is None:
    raise ParameterError("%r was not sampled from the analytic family" % (f,))
  return sample(f.expr, grid)


def inner(g, f):
  """
  <g|f> = sum_i w_i conj(g_i) f_i, antilinear in the first slot
  """
  check_same_grid(g, f)
  if g is f or np.array_equal(g.values, f.values):
    return complex(np.sum(f.grid.weights * np.abs(f.values)**2))
  # conj(g)*f before weighting keeps <f|g> = conj(<g|f>) exact
  return complex(np.sum(g.grid.weights * (np.conj(g.values) * f.values)))


def norm(f):
  return float(np.sqrt(np.sum(f.grid.weights * np.abs(f.values)**2)))


def integrate(f):
  """
  Trapezoid integral over [0, e_max) including the origin sample
  """
  return complex(f.grid.origin_weight * f.boundary_value_origin
                 + np.sum(f.grid.weights * f.values))


def vanishes_at_origin(f):
  """True when f is a discrete stand-in for a member of D(T): f(0) = 0"""
  scale = max(np.max(np.abs(f.values)), abs(f.boundary_value_origin))
  if scale == 0:
    return True
  return abs(f.boundary_value_origin) <= ORIGIN_TOL * scale
