#! /usr/bin/env python

import os
import re

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def _section(text, name):
    """Items listed under '  <name>:' in a conda recipe"""
    match = re.search(r'^  %s:\n((?:    .*\n)+)' % name, text, re.M)
    if match is None:
        return []
    return [line.strip()[2:] for line in match.group(1).splitlines()
            if line.strip().startswith('- ')]


def test_conda_run_requirements_match_setup():
    with open(os.path.join(ROOT, 'conda', 'meta.yaml')) as f:
        recipe = f.read()
    with open(os.path.join(ROOT, 'setup.py')) as f:
        setup = f.read()
    install = re.search(r"install_requires = \[(.*?)\]", setup).group(1)
    install = sorted(re.findall(r"'([^']+)'", install))
    run = [item for item in _section(recipe, 'run') if item != 'python']
    assert sorted(run) == install
    assert 'matplotlib' not in run
    assert 'matplotlib' in _section(recipe, 'run_constrained')


if __name__ == '__main__':
    test_conda_run_requirements_match_setup()
