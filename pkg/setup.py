#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Setup script for naive
"""
from setuptools import setup, find_packages
from setuptools.command.test import test as TestCommand
from naive import __version__

import sys


class PyTest(TestCommand):
    user_options = [('pytest-args=', 'a', "Arguments to pass to py.test")]

    def initialize_options(self):
        TestCommand.initialize_options(self)
        self.pytest_args = ""

    def run_tests(self):
        # import here, cause outside the eggs aren't loaded
        import pytest
        if self.pytest_args:
            self.pytest_args = self.pytest_args.replace('"', '').split(' ')
        else:
            self.pytest_args = []
        print('running test command: py.test "%s"' % ' '.join(
            self.pytest_args))
        errno = pytest.main(self.pytest_args)
        sys.exit(errno)


cmdclass = {'test': PyTest}


DESCRIPTION = 'Probabilistic temporal inference engine'


def readme():
    return str(open('README.rst').read())


setup(
    name='naive',
    version=__version__,
    packages=[p for p in find_packages() if 'test' not in p],
    package_data={'naive.fixtures': ['*.nkb']},
    keywords=["probabilistic temporal inference knowledge base density"],
    license='MIT',
    description=DESCRIPTION,
    long_description=readme(),
    install_requires=['pygments', 'numpy'],
    tests_require=['pytest-xdist', 'pytest-cov', 'pytest'],
    entry_points={
        'console_scripts': [
            'naive = naive.tools.cli:main'
        ],
        'pygments.lexers':
            ['nkb = naive.dsl.lexer:NkbLexer'],
    },
    zip_safe=False,
    cmdclass=cmdclass,
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'Intended Audience :: Healthcare Industry',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Medical Science Apps.'])
