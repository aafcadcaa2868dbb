#!/usr/bin/env python

from setuptools import setup

setup(name = 'ratewarp',
      version = '0.1.0',
      packages = ['ratewarp'],
      description = 'Speaking rate conversion by interpolating inside a neural vocoder, with a WSOLA baseline and an evaluation harness',
      python_requires = '>=3.8',
      install_requires = ['numpy>=1.20', 'scipy>=1.6'],
      extras_require = {'tests': ['pytest', 'hypothesis']},
      entry_points = {'console_scripts': ['ratewarp = ratewarp.cli:main']},
      classifiers = [
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU Lesser General Public License v2 or later (LGPLv2+)',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Topic :: Multimedia :: Sound/Audio :: Speech'
      ],
      provides = ['ratewarp']
     )
