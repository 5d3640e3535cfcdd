# -*- coding: utf-8 -*-
"""
A helper module for testing, introducing some helper functions: fixture
loading, observation shortcuts and the Monte-Carlo oracle used by the
density tests.
"""
import os
import functools
from os.path import abspath
from os.path import dirname

import numpy as np

from naive import dsl, fixtures
from naive.api import engine
from naive.api.context import EvalContext
from naive.tools.records import decode_record


test_dir = dirname(abspath(__file__))


def files_path(*names):
    """ Returns the path of a file of the test/files directory """
    return os.path.join(test_dir, 'files', *names)


def read_file(*names):
    with open(files_path(*names), encoding='utf-8') as stream:
        return stream.read()


# -------------------
# Decorators
# -------------------
def delete_file_on_return(path):
    """
    Decorator that removes ``path`` when the decorated test returns.

    :type path: str
    """
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwds):
            try:
                return func(*args, **kwds)
            finally:
                try:
                    os.remove(path)
                except (IOError, OSError):
                    pass
        return wrapper
    return decorator


# -------------------
# Knowledge bases and contexts
# -------------------
def load_fixture(name):
    """ Loads one of the shipped knowledge bases """
    return dsl.load(fixtures.path(name))


def make_context(name, *records, **kwargs):
    """
    Returns a context over a shipped knowledge base with the given
    ``(datum, time, value)`` records already reported.
    """
    ctx = EvalContext(load_fixture(name), **kwargs)
    for record in records:
        observe(ctx, *record)
    return ctx


def observe(ctx, datum, time, value):
    """
    Reports an observation written the way observation files write them
    (``exact:70``, ``range:68,72``, ``pmf:{...}``).

    :returns: the removed cache keys
    """
    return engine.report_observation(
        ctx, decode_record(ctx.kb, datum, time, value))


def branches(trace):
    """
    Returns the ``variable -> branch`` mapping of a trace, for the nodes that
    took a branch.
    """
    return dict((n.variable, n.branch) for n in trace.walk()
                if n.branch is not None)


# -------------------
# Monte-Carlo oracle
# -------------------
def sample(density, size, rng):
    """
    Draws ``size`` values of a cardinal density.
    """
    lefts, rights = density.edges[:-1], density.edges[1:]
    masses = np.concatenate((density.atom_masses,
                             density.heights * (rights - lefts)))
    lows = np.concatenate((density.atom_locations, lefts))
    highs = np.concatenate((density.atom_locations, rights))
    which = rng.choice(len(masses), size=size, p=masses / masses.sum())
    return rng.uniform(lows[which], highs[which])


def ks_distance(density, samples):
    """
    Kolmogorov-Smirnov distance between the CDF of a density and the
    empirical CDF of samples.
    """
    samples = np.sort(samples)
    n = len(samples)
    points = np.unique(np.concatenate((samples, density.edges,
                                       density.atom_locations)))
    empirical = np.searchsorted(samples, points, side='right') / n
    empirical_left = np.searchsorted(samples, points, side='left') / n
    model = density.cdf(points)
    model_left = density.cdf(np.nextafter(points, -np.inf))
    return float(max(np.max(np.abs(empirical - model)),
                     np.max(np.abs(empirical_left - model_left))))
