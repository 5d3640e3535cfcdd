"""
This module contains the observation store manager.
"""
import bisect
import json
import logging
import threading

from naive.api.manager import Manager
from naive.api.timebase import TimeSpec


def _logger():
    """ Returns module's logger """
    return logging.getLogger(__name__)


def _sort_key(observation):
    # total order, so that ingestion order never changes fusion order
    return (observation.time.reference, observation.time.shape,
            str(observation.time),
            json.dumps(observation.density.to_dict(), sort_keys=True))


class ObservationStore(Manager):
    """
    Holds the observations reported for each datum, sorted by time.

    Observations are any object with ``datum``, ``time`` (a
    :class:`naive.api.timebase.TimeSpec`) and ``density`` attributes.
    """
    def __init__(self, context):
        super(ObservationStore, self).__init__(context)
        self._lock = threading.RLock()
        self._observations = {}
        self._keys = {}

    def add(self, observation):
        """
        Adds an observation.

        :param observation: The observation to record.
        """
        key = _sort_key(observation)
        with self._lock:
            keys = self._keys.setdefault(observation.datum, [])
            observations = self._observations.setdefault(
                observation.datum, [])
            index = bisect.bisect_right(keys, key)
            keys.insert(index, key)
            observations.insert(index, observation)
        _logger().log(5, 'observation of %s at %s recorded',
                      observation.datum, observation.time)
        return observation

    def remove(self, observation):
        """
        Removes an observation (the first one equal to ``observation``).

        :raises: ValueError if the observation is not in the store.
        """
        with self._lock:
            observations = self._observations.get(observation.datum, [])
            for index, candidate in enumerate(observations):
                if candidate == observation:
                    del observations[index]
                    del self._keys[observation.datum][index]
                    return candidate
        raise ValueError('%r is not in the store' % (observation, ))

    def clear(self):
        with self._lock:
            self._observations.clear()
            self._keys.clear()

    def observations(self, datum):
        """
        Returns the observations of a datum, sorted by time.
        """
        with self._lock:
            return list(self._observations.get(datum, []))

    def at(self, datum, t):
        """
        Returns the observations of ``datum`` recorded exactly at the time
        spec ``t``.
        """
        return [o for o in self.observations(datum) if o.time == t]

    def instants(self, datum):
        """
        Returns the sorted, distinct instants at which ``datum`` was
        observed (interval observations are ignored).
        """
        points = sorted(set(o.time.value for o in self.observations(datum)
                            if o.time.shape == TimeSpec.INSTANT))
        return points

    def within(self, datum, t, radius):
        """
        Returns the instant observations of ``datum`` within ``radius`` of
        the time point ``t``.
        """
        return [o for o in self.observations(datum)
                if o.time.shape == TimeSpec.INSTANT and
                abs(o.time.value - t) <= radius]

    def datums(self):
        """
        Returns the names of the observed datums.
        """
        with self._lock:
            return sorted(k for k, v in self._observations.items() if v)

    def copy_into(self, other, exclude=None):
        """
        Copies every observation (but ``exclude``) into another store.
        """
        skipped = exclude is None
        for datum in self.datums():
            for observation in self.observations(datum):
                if not skipped and observation == exclude:
                    skipped = True
                    continue
                other.add(observation)
        return other

    def __len__(self):
        with self._lock:
            return sum(len(v) for v in self._observations.values())

    def __iter__(self):
        return iter([o for d in self.datums() for o in self.observations(d)])
