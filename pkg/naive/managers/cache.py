"""
This module contains the density cache manager.
"""
import logging
import threading

from naive.api.manager import Manager


def _logger():
    """ Returns module's logger """
    return logging.getLogger(__name__)


class DensityCache(Manager):
    """
    Caches the densities evaluated for inference variables.

    Keys are ``(variable name, TimeSpec)`` pairs; there is no tolerance
    based matching.
    """
    def __init__(self, context, enabled=True):
        super(DensityCache, self).__init__(context)
        self._lock = threading.RLock()
        self._entries = {}
        #: Disabled caches never store anything
        self.enabled = enabled
        self.hits = 0
        self.misses = 0

    def get(self, name, t):
        """
        Returns the cached density, or None.
        """
        with self._lock:
            density = self._entries.get((name, t))
            if density is None:
                self.misses += 1
            else:
                self.hits += 1
                _logger().log(5, 'cache hit: %s at %s', name, t)
            return density

    def put(self, name, t, density):
        if not self.enabled:
            return
        with self._lock:
            self._entries[(name, t)] = density

    def invalidate(self, names):
        """
        Removes every entry whose variable is in ``names``.

        :returns: the removed keys, sorted by name then time.
        """
        names = set(names)
        with self._lock:
            removed = [k for k in self._entries if k[0] in names]
            for key in removed:
                del self._entries[key]
        removed.sort(key=lambda k: (k[0], str(k[1])))
        if removed:
            _logger().debug('invalidated %d cached densities', len(removed))
        return removed

    def clear(self):
        with self._lock:
            self._entries.clear()
            self.hits = self.misses = 0

    def keys(self):
        with self._lock:
            return list(self._entries.keys())

    def __contains__(self, key):
        with self._lock:
            return key in self._entries

    def __len__(self):
        with self._lock:
            return len(self._entries)
