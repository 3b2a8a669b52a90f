# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
from setuptools import setup

version = {}
with open('__init__.py') as f:
    exec(f.read(), version)

setup(name='hornbody',
      version=version['__version__'],
      description='Quantum Horn bodies: sampling, membership gaps and an exact '
      'non-convexity certificate',
      packages=['hornbody', 'hornbody.util', 'hornbody.horn', 'hornbody.certalg'],
      package_dir={'hornbody': ''},
      package_data={'hornbody': ['etc/hornbody.cfg']},
      install_requires=['numpy', 'scipy', 'sympy'],
      entry_points={'console_scripts': ['hornbody = hornbody.cli:main']},
      )
