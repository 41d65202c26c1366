#! /usr/bin/env python

import json
import os

import numpy as np
import pytest

import timeop
from timeop.timeop import relabel_mode, SYMBOL_TABLES
from timeop.suites import (build_suite, convergence_order, refinement_sweep,
                           write_sweep, WITNESS_POINTS)


CONFIG = """
[mode]
observable = %s

[grid]
e_max = 50
n = 999
hbar = 1

[suites]
run = %s

[input]
test_functions = %s

[output]
directory = %s
format = %s
Plot = False

[verbosity]
Quiet = True
"""


def write_config(tmp_path, mode='time', suites='domains', format='json',
                 test_functions='power_exp(1, 1); gaussian(5, 1)'):
    path = tmp_path / 'run.cfg'
    path.write_text(CONFIG % (mode, suites, test_functions, tmp_path / 'out', format))
    return str(path)


def test_relabel_mode():
    assert relabel_mode('time')['candidate'] == 'T'
    assert relabel_mode('halfline-momentum') == SYMBOL_TABLES['halfline_momentum']
    assert relabel_mode('radial_momentum')['conjugate'] == 'p_r'
    with pytest.raises(timeop.ParameterError):
        relabel_mode('phase')


def test_modes_command(capsys):
    assert timeop.main(['modes']) == 0
    tables = json.loads(capsys.readouterr().out)
    assert sorted(tables) == sorted(timeop.OBSERVABLE_MODES)
    with pytest.raises(SystemExit):
        timeop.main(['modes', '--mode', 'phase'])


def test_report_command(tmp_path):
    config = write_config(tmp_path)
    assert timeop.main(['report', '--config', config]) == 0
    with open(os.path.join(str(tmp_path / 'out'), 'domains_n999.json')) as f:
        report = json.load(f)
    assert report['suite'] == 'domains'
    assert report['grid']['n'] == 999
    assert report['symbols']['generator'] == 'H'
    assert all(check['paper_anchor'] for check in report['checks'])
    assert all(check['pass'] for check in report['checks'])


def test_report_csv(tmp_path):
    config = write_config(tmp_path, format='csv')
    assert timeop.main(['report', '--config', config]) == 0
    assert os.path.isfile(os.path.join(str(tmp_path / 'out'), 'domains_n999.csv'))
    with open(os.path.join(str(tmp_path / 'out'), 'domains_n999.csv')) as f:
        assert f.readline().split(',')[6] == 'paper_anchor'


def test_numerics_do_not_depend_on_mode(tmp_path):
    measured = {}
    for mode in ('time', 'radial_momentum'):
        lab = timeop.Laboratory()
        lab.Quiet = True
        lab.mode = mode
        lab.suites = ['domains']
        lab.n_list = [999]
        lab.outdir = str(tmp_path / mode)
        lab.initialize()
        lab.run()
        report = lab.reports[0]
        assert report.symbols == relabel_mode(mode)
        measured[mode] = [check.measured for check in report.checks]
    assert measured['time'] == measured['radial_momentum']


def test_config_rejects(tmp_path):
    with pytest.raises(SystemExit):
        timeop.main(['report', '--config', write_config(tmp_path, suites='')])
    with pytest.raises(SystemExit):
        timeop.main(['report', '--config', write_config(tmp_path, suites='magic')])
    with pytest.raises(SystemExit):
        timeop.main(['report', '--config', write_config(tmp_path, mode='phase')])
    with pytest.raises(SystemExit):
        timeop.main(['report', '--config', str(tmp_path / 'missing.cfg')])


def test_config_rejects_wrong_parameter_count(tmp_path, capsys):
    config = write_config(tmp_path, suites='spectra, algebra',
                          test_functions='power_exp(1)')
    with pytest.raises(SystemExit) as err:
        timeop.main(['report', '--config', config])
    assert 'power_exp' in str(err.value.code)
    # rejected before any suite ran
    assert 'Suite' not in capsys.readouterr().out


def test_sweep_needs_three_grids(tmp_path):
    lab = timeop.Laboratory()
    lab.Quiet = True
    lab.suites = ['domains']
    lab.n_list = [99, 199]
    lab.outdir = str(tmp_path)
    lab.initialize()
    with pytest.raises(SystemExit):
        lab.sweep()
    with pytest.raises(timeop.ParameterError):
        refinement_sweep(50., [99, 199], 1., [('power_exp', (1, 1))])


def test_build_suite_rejects():
    with pytest.raises(timeop.ParameterError):
        build_suite('magic', timeop.make_grid(10, 64), [])


def test_spectra_on_coarse_grid():
    grid = timeop.make_grid(50, 99)
    report = build_suite('spectra', grid, [])
    assert report.passed, report.failures()
    assert report['sqrt_lowest_modes'].tolerance > 1E-4
    assert report['sqrt_lowest_modes'].measured > 1E-4


def test_witness_reports_criterion():
    grid = timeop.make_grid(50, 999)
    report = build_suite('deficiency', grid, [])
    for z in WITNESS_POINTS:
        check = report['witness_z=%s' % z]
        assert check.passed
        assert check.criterion == 1E-2
        assert check.tolerance == timeop.witness_tolerance(z, grid)
        record = check.to_dict()
        assert record['meets_criterion'] == (check.measured <= 1E-2)
    assert report['witness_z=1j'].meets_criterion
    assert 'criterion' not in report['T_indices'].to_dict()


def test_convergence_order():
    h = np.array([0.1, 0.05, 0.025])
    assert convergence_order(h, 3*h**2) == pytest.approx(2.)
    assert np.isnan(convergence_order(h, [1., 0., 1.]))


def test_refinement_sweep(tmp_path):
    rows, staircases, report = refinement_sweep(
        20., [63, 127, 255], 1., [('power_exp', (1, 1)), ('exp', (1,))])
    assert sorted(staircases) == [63, 127, 255]
    assert len(staircases[255]) == 255
    canonical = [row for row in rows if row[2] == 'canonical_power_exp(1,1)']
    assert len(canonical) == 3
    assert abs(canonical[0][4] - 2.) <= 0.3
    # exp(1) does not vanish at the origin
    assert not any(row[2].endswith('_exp(1)') for row in rows)
    assert report.suite == 'sweep'
    paths = write_sweep(str(tmp_path), rows, staircases)
    assert os.path.basename(paths[0]) == 'convergence.csv'
    with open(paths[0]) as f:
        assert f.readline().strip() == 'n,h,check_id,residual,fitted_order'
    assert os.path.isfile(str(tmp_path / 'staircase_n127.csv'))


if __name__ == '__main__':
    test_relabel_mode()
    test_convergence_order()
