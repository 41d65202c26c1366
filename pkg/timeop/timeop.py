#! /usr/bin/env python

"""
This file is part of timeop.
timeop builds and checks time operators on a discretized half-line

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

import argparse
import json
import sys

from ._version import __version__
from .base import Laboratory, ParameterError, OBSERVABLE_MODES, SUITES

__all__ = ['main', 'relabel_mode', 'SYMBOL_TABLES']

# The same half-line construction read as time, half-line momentum or radial
# momentum: only the names change
SYMBOL_TABLES = {
  'time': {'variable': 'E', 'conjugate': 't', 'generator': 'H',
           'candidate': 'T', 'variant': 'T_sqrt', 'variant_squared': 'T_F^2'},
  'halfline_momentum': {'variable': 'x', 'conjugate': 'p', 'generator': 'X',
                        'candidate': 'P', 'variant': 'P_sqrt',
                        'variant_squared': 'P_F^2'},
  'radial_momentum': {'variable': 'r', 'conjugate': 'p_r', 'generator': 'R',
                      'candidate': 'P_r', 'variant': 'P_r_sqrt',
                      'variant_squared': 'P_r_F^2'},
}


def relabel_mode(mode):
  """Symbol table of an observable mode; numerics never depend on it"""
  mode = str(mode).replace('-', '_')
  if mode not in SYMBOL_TABLES:
    raise ParameterError("unknown observable mode %r; known: %s"
                         % (mode, ", ".join(OBSERVABLE_MODES)))
  return dict(SYMBOL_TABLES[mode])


def welcome():
  print("")
  print("***************************"+"*"*len(__version__))
  print("*** WELCOME to timeop v"+__version__+" ***")
  print("***************************"+"*"*len(__version__))
  print("")


def furtherHelp():
  return ("To generate a configuration file, see the examples in the 'input'\n"
          "directory of this install. To run in a Python script:\n"
          "  import timeop\n"
          "  lab = timeop.Laboratory()\n"
          "  lab.suites = ['spectra']\n"
          "  lab.initialize(); lab.run(); lab.finalize(); lab.output()\n")


def build_parser():
  parser = argparse.ArgumentParser(
    prog='timeop',
    description="Time operators on a discretized half-line: report suites, "
                "refinement sweeps and observable relabeling.",
    epilog=furtherHelp(), formatter_class=argparse.RawDescriptionHelpFormatter)
  parser.add_argument('-v', '--version', action='version',
                      version='timeop v' + __version__)
  sub = parser.add_subparsers(dest='command')

  def common(p):
    p.add_argument('--config', default=None,
                   help="INI run configuration; without it every suite runs "
                        "with the default grids")
    p.add_argument('--out', default=None, help="output directory")
    p.add_argument('--format', choices=('json', 'csv'), default=None)
    p.add_argument('--mode', default=None,
                   help="time | halfline-momentum | radial-momentum")
    p.add_argument('--seed', type=int, default=None,
                   help="reserved; every computation is deterministic")

  common(sub.add_parser('report', help="run report suites over the grids"))
  common(sub.add_parser('sweep', help="refinement sweep with fitted orders"))
  modes = sub.add_parser('modes', help="print the symbol table of each mode")
  modes.add_argument('--mode', default=None)
  return parser


def _laboratory(args):
  lab = Laboratory(args.config)
  if args.out is not None: lab.outdir = args.out
  if args.format is not None: lab.format = args.format
  if args.mode is not None: lab.mode = args.mode
  if args.config is None:
    lab.suites = list(SUITES)
  lab.initialize()
  if lab.Debug: print("Command line:", sys.argv, "seed:", args.seed)
  return lab


def main(argv=None):
  args = build_parser().parse_args(argv)

  if args.command is None:
    welcome()
    build_parser().print_help()
    return 0

  if args.command == 'modes':
    modes = [args.mode.replace('-', '_')] if args.mode else list(OBSERVABLE_MODES)
    try:
      tables = dict((mode, relabel_mode(mode)) for mode in modes)
    except ParameterError as err:
      raise SystemExit(str(err))
    print(json.dumps(tables, indent=2, sort_keys=True))
    return 0

  lab = _laboratory(args)
  if args.command == 'report':
    lab.run()
  else:
    lab.sweep()
  lab.finalize()
  lab.output()
  if not lab.passed:
    if lab.Quiet == False:
      print("Some checks FAILED; see the reports in " + lab.outdir)
    return 1
  return 0


if __name__ == '__main__':
  raise SystemExit(main())
