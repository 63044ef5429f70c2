#!/usr/bin/env python

from setuptools import setup

setup(name='nlcert',
      version='1.0',
      description='Certification toolkit for genuine hidden nonlocality \
of orthogonal product-state sets',
      packages=['nlcert'],
      install_requires=['numpy', 'scipy', 'lark', 'matplotlib'],
      extras_require={'test': ['pytest']},
      scripts=['bin/nlcert']
     )
