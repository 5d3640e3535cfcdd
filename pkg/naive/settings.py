"""
This module contains a class to access the naive settings.

Settings are read from a simple key/value store, by default the process
environment, so that every tunable constant of the engine can be overridden
without touching the code (``NAIVE_GRID=1024 naive eval ...``).

Invalid values are never fatal: a warning is logged and the default is used
instead.
"""
import logging
import os


def _logger():
    return logging.getLogger(__name__)


class Settings(object):
    """
    Provides an easy access to the engine settings by exposing some wrapper
    properties over a key/value store.

    """
    #: Default cell count used when an operation leaves the exact family
    DEFAULT_GRID = 512
    #: Smallest accepted grid resolution
    MIN_GRID = 8
    #: Default contradiction threshold (a contradiction is an event of
    #: probability zero)
    DEFAULT_THRESHOLD = 0.0
    #: Default depth of the backward chaining recursion guard
    DEFAULT_RECURSION = 64
    #: Default half-width of the excluded divisor neighborhood, as a fraction
    #: of the divisor range span
    DEFAULT_ZERO_NEIGHBORHOOD = 1e-6

    def __init__(self, store=None):
        """
        :param store: mapping used to look up settings. Default is
            ``os.environ``.
        """
        if store is None:
            store = os.environ
        self._store = store

    def _get(self, key, default, convert, check=lambda v: True):
        raw = self._store.get(key)
        if raw is None or raw == '':
            return default
        try:
            value = convert(raw)
        except (TypeError, ValueError):
            _logger().warning('invalid value for %s: %r, using %r',
                              key, raw, default)
            return default
        if not check(value):
            _logger().warning('value out of bounds for %s: %r, using %r',
                              key, raw, default)
            return default
        return value

    @property
    def grid_resolution(self):
        """
        Cell count of the re-projection grid (``NAIVE_GRID``).
        """
        return self._get('NAIVE_GRID', self.DEFAULT_GRID, int,
                         lambda v: v >= self.MIN_GRID)

    @grid_resolution.setter
    def grid_resolution(self, value):
        self._store['NAIVE_GRID'] = str(int(value))

    @property
    def contradiction_threshold(self):
        """
        Probability at or below which an observation is reported as a
        contradiction (``NAIVE_THRESHOLD``).
        """
        return self._get('NAIVE_THRESHOLD', self.DEFAULT_THRESHOLD, float,
                         lambda v: 0.0 <= v <= 1.0)

    @contradiction_threshold.setter
    def contradiction_threshold(self, value):
        self._store['NAIVE_THRESHOLD'] = repr(float(value))

    @property
    def recursion_limit(self):
        """
        Maximum backward chaining depth (``NAIVE_RECURSION``).
        """
        return self._get('NAIVE_RECURSION', self.DEFAULT_RECURSION, int,
                         lambda v: v > 0)

    @property
    def zero_neighborhood(self):
        """
        Half-width of the neighborhood of 0 a divisor support must avoid,
        relative to the divisor range span (``NAIVE_ZERO_NEIGHBORHOOD``).
        """
        return self._get('NAIVE_ZERO_NEIGHBORHOOD',
                         self.DEFAULT_ZERO_NEIGHBORHOOD, float,
                         lambda v: 0.0 <= v < 1.0)

    @property
    def cache_enabled(self):
        """
        Whether evaluation contexts cache inferred densities (``NAIVE_CACHE``).
        """
        return self._get('NAIVE_CACHE', True, lambda v: v.lower() not in (
            '0', 'no', 'false', 'off'))
