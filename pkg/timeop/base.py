"""
This file is part of timeop.
timeop builds and checks time operators on a discretized half-line
Copyright (C) 2010-2020 Andrew D. Wickert (configuration and run lifecycle)

timeop is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

timeop is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with timeop.  If not, see <http://www.gnu.org/licenses/>.
"""

import configparser
import csv
import datetime
import json
import os
import sys
import time

import numpy as np

from ._version import __version__

__all__ = ['ParameterError', 'DomainError', 'GridMismatchError',
           'check_same_grid', 'Check', 'Report', 'Utility', 'Plotting',
           'Laboratory', 'OBSERVABLE_MODES', 'SUITES', 'DEFAULT_TEST_FUNCTIONS']

OBSERVABLE_MODES = ('time', 'halfline_momentum', 'radial_momentum')
SUITES = ('domains', 'deficiency', 'spectra', 'time_rep', 'hft', 'algebra',
          'distribution')
DEFAULT_TEST_FUNCTIONS = 'power_exp(1, 1); power_exp(2, 1); gaussian(5, 1)'


class ParameterError(ValueError):
  """Invalid numerical parameter (grid size, t, z, step)."""


class DomainError(ValueError):
  """Function or operator outside the domain an operation requires."""


class GridMismatchError(ValueError):
  """Operands live on different grids."""


def check_same_grid(*objects):
  """
  Raises GridMismatchError unless every object carries the same grid
  """
  grids = [obj.grid for obj in objects]
  for grid in grids[1:]:
    if grid != grids[0]:
      raise GridMismatchError("operands are defined on different grids: "
                              + repr(grids[0]) + " vs " + repr(grid))


class Check(object):
  """
  One verified statement: what was measured, against which tolerance.

  relation is '<=' when the measurement must stay below the tolerance and
  '>=' when it must reach it (lower-bound witnesses such as gaps).
  criterion, when given, is a stricter published bound reported next to
  the tolerance the discretization can meet; it does not decide pass.
  """

  def __init__(self, id, anchor, measured, tolerance, relation='<=',
               criterion=None):
    self.id = id
    self.anchor = anchor
    self.measured = float(measured)
    self.tolerance = float(tolerance)
    self.relation = relation
    self.criterion = None if criterion is None else float(criterion)
    if relation == '<=':
      self.passed = bool(self.measured <= self.tolerance)
    elif relation == '>=':
      self.passed = bool(self.measured >= self.tolerance)
    else:
      raise ParameterError("relation must be '<=' or '>=', not " + repr(relation))

  @property
  def meets_criterion(self):
    if self.criterion is None:
      return None
    if self.relation == '<=':
      return bool(self.measured <= self.criterion)
    return bool(self.measured >= self.criterion)

  def to_dict(self):
    out = {'id': self.id, 'paper_anchor': self.anchor, 'measured': self.measured,
           'tolerance': self.tolerance, 'relation': self.relation,
           'pass': self.passed}
    if self.criterion is not None:
      out['criterion'] = self.criterion
      out['meets_criterion'] = self.meets_criterion
    return out

  def __repr__(self):
    return "Check(%s: %.6g %s %.6g -> %s)" % (self.id, self.measured,
      self.relation, self.tolerance, 'pass' if self.passed else 'FAIL')


class Report(object):
  """
  Structured record of one suite run on one grid
  """

  def __init__(self, suite, grid, mode='time', symbols=None):
    self.suite = suite
    self.grid = grid
    self.mode = mode
    self.symbols = symbols or {}
    self.checks = []

  def add(self, id, anchor, measured, tolerance, relation='<=', criterion=None):
    check = Check(id, anchor, measured, tolerance, relation, criterion)
    self.checks.append(check)
    return check

  @property
  def passed(self):
    return all(check.passed for check in self.checks)

  def failures(self):
    return [check for check in self.checks if not check.passed]

  def __getitem__(self, id):
    for check in self.checks:
      if check.id == id:
        return check
    raise KeyError(id)

  def to_dict(self, timestamp=None):
    return {
      'suite': self.suite,
      'mode': self.mode,
      'grid': {'e_max': self.grid.e_max, 'n': self.grid.n,
               'hbar': self.grid.hbar},
      'symbols': self.symbols,
      'environment': {'version': __version__, 'timestamp': timestamp,
                      'truncation': 'Dirichlet condition imposed at E = e_max'},
      'checks': [check.to_dict() for check in self.checks],
    }

  def write(self, directory, format='json', timestamp=None):
    """
    Writes the report as <suite>_n<n>.<format> and returns the path
    """
    path = os.path.join(directory, "%s_n%d.%s" % (self.suite, self.grid.n, format))
    if format == 'json':
      with open(path, 'w') as f:
        json.dump(self.to_dict(timestamp), f, indent=2, sort_keys=True)
        f.write('\n')
    elif format == 'csv':
      with open(path, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(['suite', 'mode', 'e_max', 'n', 'hbar', 'id', 'paper_anchor',
                         'measured', 'tolerance', 'relation', 'pass'])
        for check in self.checks:
          writer.writerow([self.suite, self.mode, repr(self.grid.e_max),
                           self.grid.n, repr(self.grid.hbar), check.id,
                           check.anchor, repr(check.measured),
                           repr(check.tolerance), check.relation,
                           check.passed])
    else:
      raise ParameterError("format must be 'json' or 'csv', not " + repr(format))
    return path


class Utility(object):

  """
  Generic utility functions
  """

  def configGet(self, vartype, category, name, optional=False, specialReturnMessage=None):
    """
    Wraps a try / except around ConfigParser as it talks to the
    configuration file.

    vartype can be 'float', 'str' or 'string' (str and string are the same),
    'int' or 'integer' (also the same), 'bool' or 'boolean', and the list
    types 'intlist' and 'strlist' (comma separated).

    "optional" determines whether or not the program will exit if the
    variable fails to load. Set it to True if you don't want it to exit; in
    this case the variable will be set to None.

    "specialReturnMessage" is appended to the failure message.
    """
    try:
      if vartype == 'float':
        var = self.config.getfloat(category, name)
      elif vartype == 'string' or vartype == 'str':
        var = self.config.get(category, name).strip()
        if var == "" and optional == False:
          raise ValueError("empty string")
      elif vartype == 'integer' or vartype == 'int':
        var = self.config.getint(category, name)
      elif vartype == 'boolean' or vartype == 'bool':
        var = self.config.getboolean(category, name)
      elif vartype == 'intlist':
        var = [int(item) for item in self.config.get(category, name).split(',')
               if item.strip()]
      elif vartype == 'strlist':
        var = [item.strip() for item in self.config.get(category, name).split(',')
               if item.strip()]
      else:
        sys.exit("Please enter 'float', 'string' (or 'str'), 'integer' (or 'int'), "
                 "'boolean' (or 'bool'), 'intlist' or 'strlist' for vartype")
      return var
    except (configparser.Error, ValueError):
      if optional:
        if self.Debug:
          print('No value entered for optional parameter "' + name + '"')
          print('in category "' + category + '" in configuration file.')
        return None
      message = ('Problem loading ' + vartype + ' "' + name + '" in category "'
                 + category + '" from configuration file "' + str(self.filename) + '".')
      if specialReturnMessage:
        message += "\n" + specialReturnMessage
      sys.exit(message + "\nExiting.")

  def parse_test_functions(self, text):
    """
    Splits 'name(p1, p2); name(p1)' into [(name, (p1, p2)), (name, (p1,))]
    """
    out = []
    for item in text.split(';'):
      item = item.strip()
      if not item:
        continue
      if '(' not in item or not item.endswith(')'):
        sys.exit('Test function "' + item + '" must look like name(p1, p2, ...)')
      name, args = item[:-1].split('(', 1)
      try:
        params = tuple(float(arg) for arg in args.split(',') if arg.strip())
      except ValueError:
        sys.exit('Test function "' + item + '" has non-numeric parameters')
      out.append((name.strip(), params))
    return out


class Plotting(object):
  """
  Renders the data-only sweep files (CSV) when a plot has been requested.
  matplotlib is imported only here so that it stays optional.
  """

  def plotting(self):
    if not self.plotChoice:
      return
    if self.Verbose: print("Starting to plot convergence data")
    from matplotlib import pyplot as plt
    if self.sweep_rows:
      plt.figure(1, figsize=(7, 5))
      check_ids = sorted(set(row[2] for row in self.sweep_rows))
      for check_id in check_ids:
        h = [row[1] for row in self.sweep_rows if row[2] == check_id]
        r = [row[3] for row in self.sweep_rows if row[2] == check_id]
        if np.all(np.array(r) > 0):
          plt.loglog(h, r, 'o-', label=check_id)
      plt.xlabel('Grid spacing h', fontsize=12, fontweight='bold')
      plt.ylabel('Residual', fontsize=12, fontweight='bold')
      plt.legend(loc=0, fontsize=7, fancybox=True)
      plt.tight_layout()
      path = os.path.join(self.outdir, 'convergence.png')
      plt.savefig(path)
      plt.close()
      if self.Verbose: print("Saving plot --> " + path)
    for n, eigenvalues in sorted(self.staircases.items()):
      plt.figure(2, figsize=(7, 5))
      k = np.arange(1, len(eigenvalues) + 1)
      plt.step(k, eigenvalues, 'k-', where='mid')
      plt.xlabel('Mode number k', fontsize=12, fontweight='bold')
      plt.ylabel('Eigenvalue of the selfadjoint variant', fontsize=12,
                 fontweight='bold')
      plt.title('Eigenvalue staircase, n = %d' % n, fontsize=14)
      plt.tight_layout()
      path = os.path.join(self.outdir, 'staircase_n%d.png' % n)
      plt.savefig(path)
      plt.close()
      if self.Verbose: print("Saving plot --> " + path)


class Laboratory(Utility, Plotting):
  """
  Runs named report suites over a list of grids.

  Values come either from a configuration file (initialize(filename)) or
  from attributes set directly before initialize() is called.
  """

  def __init__(self, filename=None):
    self.filename = filename

    # DEFAULT VERBOSITY
    self.Quiet = False
    self.Verbose = True
    self.Debug = False

    self.mode = None
    self.e_max = None
    self.n_list = None
    self.hbar = None
    self.suites = None
    self.test_functions = None
    self.outdir = None
    self.format = None
    self.plotChoice = None

    self.reports = []
    self.sweep_rows = []
    self.staircases = {}

  def initialize(self, filename=None):
    if filename and not self.filename:
      self.filename = filename

    if self.filename:
      if not os.path.isfile(self.filename):
        sys.exit("No configuration file at specified path: " + str(self.filename))
      self.config = configparser.ConfigParser()
      try:
        self.config.read(self.filename)
      except configparser.Error as err:
        sys.exit("Configuration file configured incorrectly:\n" + str(err))
      self.inpath = os.path.dirname(os.path.realpath(self.filename)) + '/'

      for flag in ('Verbose', 'Debug', 'Quiet'):
        value = self.configGet('bool', 'verbosity', flag, optional=True)
        if value is not None:
          setattr(self, flag, value)
    # Quiet overrides all others
    if self.Quiet:
      self.Debug = False
      self.Verbose = False

    if self.Quiet == False:
      print("")
      print("*****************************" + "*"*len(__version__))
      print("*** Initializing timeop v" + __version__ + " ***")
      print("*****************************" + "*"*len(__version__))
      print("")

    if self.filename:
      # Command-line overrides (set before initialize) win over the file
      if self.mode is None:
        self.mode = self.configGet('string', 'mode', 'observable', optional=True)
      if self.e_max is None:
        self.e_max = self.configGet('float', 'grid', 'e_max', optional=True)
      if self.n_list is None:
        self.n_list = self.configGet('intlist', 'grid', 'n', optional=True)
      if self.hbar is None:
        self.hbar = self.configGet('float', 'grid', 'hbar', optional=True)
      if self.suites is None:
        self.suites = self.configGet('strlist', 'suites', 'run',
          specialReturnMessage="At least one suite must be selected from:\n"
                               + ", ".join(SUITES))
      if self.test_functions is None:
        text = self.configGet('string', 'input', 'test_functions', optional=True)
        if text:
          self.test_functions = self.parse_test_functions(text)
      if self.outdir is None:
        self.outdir = self.configGet('string', 'output', 'directory', optional=True)
      if self.format is None:
        self.format = self.configGet('string', 'output', 'format', optional=True)
      if self.plotChoice is None:
        self.plotChoice = self.configGet('bool', 'output', 'Plot', optional=True)

    # Defaults
    if self.mode is None: self.mode = 'time'
    if self.e_max is None: self.e_max = 50.
    if self.n_list is None: self.n_list = [499, 999, 1999]
    if self.hbar is None: self.hbar = 1.
    if self.test_functions is None:
      self.test_functions = self.parse_test_functions(DEFAULT_TEST_FUNCTIONS)
    if self.outdir is None: self.outdir = 'timeop_output'
    if self.format is None: self.format = 'json'

    self.config_check()

  def config_check(self):
    """
    Rejects a malformed run configuration before any computation
    """
    from .grid import FAMILY
    self.mode = self.mode.replace('-', '_')
    if self.mode not in OBSERVABLE_MODES:
      sys.exit("'" + self.mode + "' is not an observable mode. Acceptable modes are:\n"
               + ", ".join(OBSERVABLE_MODES) + "\nExiting.")
    if not self.suites:
      sys.exit("No suite selected: choose at least one of\n" + ", ".join(SUITES))
    for suite in self.suites:
      if suite not in SUITES:
        sys.exit("'" + suite + "' is not a report suite. Acceptable suites are:\n"
                 + ", ".join(SUITES) + "\nExiting.")
    if not self.n_list or list(self.n_list) != sorted(self.n_list):
      sys.exit("Grid sizes n must be given in ascending order, not " + str(self.n_list))
    if self.e_max <= 0 or self.hbar <= 0 or min(self.n_list) < 16:
      sys.exit("Grid parameters must satisfy e_max > 0, hbar > 0, n >= 16")
    for name, params in self.test_functions:
      if name not in FAMILY:
        sys.exit("Unknown test function '" + name + "'. Known functions are:\n"
                 + ", ".join(sorted(FAMILY)))
      names = FAMILY[name][2]
      if len(params) != len(names):
        sys.exit("Test function '" + name + "' takes " + str(len(names))
                 + " parameters (" + ", ".join(names) + "), got "
                 + str(len(params)) + ": " + str(tuple(params)))
    if self.format not in ('json', 'csv'):
      sys.exit("Output format must be json or csv, not '" + str(self.format) + "'")
    try:
      os.makedirs(self.outdir, exist_ok=True)
    except OSError as err:
      sys.exit("Cannot create output directory " + self.outdir + ": " + str(err))
    if not os.access(self.outdir, os.W_OK):
      sys.exit("Output directory " + self.outdir + " is not writable")
    if self.Debug:
      print("mode", self.mode, "e_max", self.e_max, "n", self.n_list,
            "hbar", self.hbar)
      print("suites", self.suites)
      print("test functions", self.test_functions)

  def run(self):
    """
    Runs every selected suite on every grid, in configuration order
    """
    from .grid import make_grid
    from .suites import build_suite
    from .timeop import relabel_mode
    symbols = relabel_mode(self.mode)
    self.reports = []
    for n in self.n_list:
      grid = make_grid(self.e_max, n, self.hbar)
      companion = self.companion_grid(n)
      for suite in self.suites:
        start_time = time.time()
        report = build_suite(suite, grid, self.test_functions, companion)
        report.mode = self.mode
        report.symbols = symbols
        self.reports.append(report)
        if self.Quiet == False:
          print("Suite %-12s n = %-5d %s   Time to run suite [s]: %.2f"
                % (suite, n, 'pass' if report.passed else 'FAIL',
                   time.time() - start_time))
        if self.Verbose:
          for check in report.failures():
            print("  FAILED", check.id, "[" + check.anchor + "]:",
                  "measured", check.measured, "tolerance", check.tolerance)
          for check in report.checks:
            if check.meets_criterion is False:
              print("  ABOVE CRITERION", check.id, "measured", check.measured,
                    "criterion", check.criterion, "tolerance", check.tolerance)

  def companion_grid(self, n):
    """
    Grid the stability checks at n compare against: the next configured
    size, else the previous one, else the refined grid
    """
    from .grid import make_grid
    later = [m for m in self.n_list if m > n]
    earlier = [m for m in self.n_list if m < n]
    if later:
      return make_grid(self.e_max, later[0], self.hbar)
    if earlier:
      return make_grid(self.e_max, earlier[-1], self.hbar)
    return make_grid(self.e_max, n, self.hbar).refined()

  def sweep(self):
    """
    Refinement sweep: residuals per grid, fitted orders, staircases
    """
    from .suites import refinement_sweep
    from .timeop import relabel_mode
    if len(self.n_list) < 3:
      sys.exit("A refinement sweep needs at least 3 grid sizes, got " + str(self.n_list))
    start_time = time.time()
    self.sweep_rows, self.staircases, report = refinement_sweep(
      self.e_max, self.n_list, self.hbar, self.test_functions)
    report.mode = self.mode
    report.symbols = relabel_mode(self.mode)
    self.reports.append(report)
    if self.Quiet == False:
      print("Sweep over n = %s %s   Time to run sweep [s]: %.2f"
            % (self.n_list, 'pass' if report.passed else 'FAIL',
               time.time() - start_time))
    if self.Debug:
      for row in self.sweep_rows:
        print(row)

  @property
  def passed(self):
    return all(report.passed for report in self.reports)

  def finalize(self):
    if self.Quiet == False:
      print("")

  def output(self):
    if self.Verbose: print("Output step")
    timestamp = datetime.datetime.now().isoformat()
    for report in self.reports:
      path = report.write(self.outdir, self.format, timestamp)
      if self.Verbose: print("Saving report --> " + path)
    if self.sweep_rows:
      from .suites import write_sweep
      for path in write_sweep(self.outdir, self.sweep_rows, self.staircases):
        if self.Verbose: print("Saving sweep data --> " + path)
    self.plotting()
