"""
This module contains the evaluation context: the mutable state of one engine
instance.
"""
import logging
import threading

from naive.api.density import GridPolicy
from naive.settings import Settings


def _logger():
    """ Returns module's logger """
    return logging.getLogger(__name__)


class EvalContext(object):
    """
    Binds a knowledge base to an observation store and a density cache.

    Like the rest of the engine, the context is organised around
    **managers**: the :attr:`store` keeps the reported observations and the
    :attr:`cache` keeps the densities already inferred. Operations live in
    :mod:`naive.api.engine` and receive the context as first argument::

        ctx = EvalContext(kb)
        engine.report_observation(ctx, Observation(
            'ReportedWeight', 'Day1T08:00', make_delta(70, weight)))
        density = engine.evaluate(ctx, 'CurrentWeight',
                                  TimeSpec.instant('Day1T10:00'))

    A context is a single writer domain: reporting an observation and
    evaluating a variable both take :attr:`lock`.
    """
    @property
    def kb(self):
        """ The (validated) knowledge base """
        return self._kb

    @property
    def store(self):
        """
        Returns a reference to the observation store manager.

        :rtype: naive.managers.ObservationStore
        """
        return self._store

    @property
    def cache(self):
        """
        Returns a reference to the density cache manager.

        :rtype: naive.managers.DensityCache
        """
        return self._cache

    @property
    def grid(self):
        """ :class:`naive.api.density.GridPolicy` of the arithmetic """
        return self._grid

    @property
    def threshold(self):
        """
        Probability at or below which an observation contradicts a model.
        """
        return self._threshold

    @threshold.setter
    def threshold(self, value):
        value = float(value)
        if not 0.0 <= value <= 1.0:
            raise ValueError('threshold must be a probability')
        self._threshold = value

    @property
    def recursion_limit(self):
        return self._recursion_limit

    @property
    def zero_neighborhood(self):
        return self._zero_neighborhood

    @property
    def settings(self):
        return self._settings

    def __init__(self, kb, settings=None, grid=None, cache=None,
                 threshold=None, recursion_limit=None):
        """
        :param kb: :class:`naive.api.kb.KnowledgeBase`
        :param settings: :class:`naive.settings.Settings` providing the
            defaults of the other parameters.
        :param grid: :class:`GridPolicy` or resolution
        :param cache: enables the density cache
        :param threshold: contradiction threshold
        :param recursion_limit: maximum backward chaining depth
        """
        if settings is None:
            settings = Settings()
        if grid is None:
            grid = settings.grid_resolution
        if not isinstance(grid, GridPolicy):
            grid = GridPolicy(grid)
        if cache is None:
            cache = settings.cache_enabled
        self._settings = settings
        self._kb = kb
        self._grid = grid
        self._threshold = 0.0
        self.threshold = (settings.contradiction_threshold
                          if threshold is None else threshold)
        self._recursion_limit = (settings.recursion_limit
                                 if recursion_limit is None
                                 else int(recursion_limit))
        self._zero_neighborhood = settings.zero_neighborhood
        # managers import naive.api, import them late
        from naive.managers import DensityCache, ObservationStore
        #: lock serializing writes and evaluations
        self.lock = threading.RLock()
        self._store = ObservationStore(self)
        self._cache = DensityCache(self, enabled=bool(cache))
        _logger().debug('context created: %r, %r, cache=%s', kb, grid,
                        self._cache.enabled)

    def fork(self, exclude=None, cache=False):
        """
        Returns a copy of the context with the same knowledge base and
        settings, the same observations but ``exclude``, and an empty
        (disabled by default) cache.
        """
        with self.lock:
            other = EvalContext(self._kb, self._settings, self._grid,
                                cache=cache, threshold=self._threshold,
                                recursion_limit=self._recursion_limit)
            other._zero_neighborhood = self._zero_neighborhood
            self._store.copy_into(other.store, exclude=exclude)
        return other

    def __repr__(self):
        return 'EvalContext(%r, %d observations, %d cached)' % (
            self._kb, len(self._store), len(self._cache))
