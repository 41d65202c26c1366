#! /usr/bin/env python

from setuptools import setup, find_packages

# Get version from file
import re
VERSIONFILE="timeop/_version.py"
verstrline = open(VERSIONFILE, "rt").read()
VSRE = r"^__version__ = ['\"]([^'\"]*)['\"]"
mo = re.search(VSRE, verstrline, re.M)
if mo:
    __version__ = mo.group(1)
else:
    raise RuntimeError("Unable to find version string in %s." % (VERSIONFILE,))

setup(
    name = "timeop",
    version = __version__,
    packages = find_packages(exclude=["tests"]),
    entry_points = {
      'console_scripts': ['timeop = timeop:main']
      },

    package_data = {
      '': ['*.md']
      },

    install_requires = ['numpy', 'scipy'],
    extras_require = {
      'plot': ['matplotlib'],
      'test': ['pytest'],
      },

    description = "Time operators, their Friedrichs extension and conjugate "
                  "representations on a discretized half-line",
    license = "GPL v3",
    keywords = ['quantum mechanics', 'time operator', 'self-adjoint extension',
                'finite differences', 'Hardy space'],
    classifiers = [],
    long_description_content_type='text/markdown',
    long_description = open('README.md', 'r').read(),
)
