# -*- coding: utf-8 -*-
"""
naive is a probabilistic temporal inference engine.

A knowledge base is a graph of variables over typed ranges (categorical,
ordinal or cardinal). Variables are evaluated at an instant, over an interval
or for a series of times by backward chaining through the procedures declared
in the knowledge base. Knowledge about a value is always carried as a
probability density function so that the uncertainty of the reported data
propagates through every inference.

The package is organised as follows:

    - :mod:`naive.api`: densities, time, knowledge base and the engine
    - :mod:`naive.managers`: observation store and density cache
    - :mod:`naive.dsl`: the ``.nkb`` knowledge base definition language
    - :mod:`naive.tools`: the ``naive`` command line tool
"""
import logging


__version__ = '1.0.0'


logging.addLevelName(5, "NAIVEDEBUG")
