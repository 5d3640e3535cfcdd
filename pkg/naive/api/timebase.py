# -*- coding: utf-8 -*-
"""
This module contains the time shapes a variable can be evaluated for (an
instant, an interval or a series of instants) and the time predicates the
procedures need.

Time points are timezone aware :class:`datetime.datetime` objects (UTC when
no offset is given) and durations are :class:`datetime.timedelta` objects.
"""
import bisect
import datetime
import re


UTC = datetime.timezone.utc

#: Day 1 of the relative ``Day<n>T<hh:mm>`` notation
DAY_ONE = datetime.datetime(2000, 1, 1, tzinfo=UTC)

_DURATION_UNITS = (('d', 86400), ('h', 3600), ('m', 60), ('s', 1))
_DURATION_RE = re.compile(r'^\s*(-?\d+)\s*([dhms])\s*$')
_DAY_RE = re.compile(
    r'^\s*[Dd]ay\s*(\d+)(?:[T ](\d{1,2}):(\d{2})(?::(\d{2}))?)?\s*$')


def parse_time(text):
    """
    Parses a time point.

    Accepts ISO-8601 (times without offset are UTC) and the relative
    notation ``Day<n>T<hh:mm[:ss]>`` where Day 1 is :data:`DAY_ONE`.

    :raises: ValueError on malformed text
    """
    if isinstance(text, datetime.datetime):
        return text if text.tzinfo else text.replace(tzinfo=UTC)
    match = _DAY_RE.match(text)
    if match:
        day, hour, minute, second = match.groups()
        if int(day) < 1:
            raise ValueError('days are counted from 1: %r' % text)
        return DAY_ONE + datetime.timedelta(
            days=int(day) - 1, hours=int(hour or 0), minutes=int(minute or 0),
            seconds=int(second or 0))
    value = text.strip()
    if value.endswith('Z'):
        value = value[:-1] + '+00:00'
    try:
        point = datetime.datetime.fromisoformat(value)
    except ValueError:
        raise ValueError('invalid time: %r' % text)
    if point.tzinfo is None:
        point = point.replace(tzinfo=UTC)
    return point


def format_time(point):
    """
    Formats a time point as ISO-8601 (UTC offset always written).
    """
    return point.isoformat()


def parse_duration(text):
    """
    Parses a duration written ``<int><unit>`` with unit ``s``, ``m``, ``h``
    or ``d`` (``12h``, ``30d``).

    :raises: ValueError on malformed text
    """
    if isinstance(text, datetime.timedelta):
        return text
    match = _DURATION_RE.match(text)
    if not match:
        raise ValueError('invalid duration: %r' % text)
    value, unit = match.groups()
    return datetime.timedelta(seconds=int(value) * dict(_DURATION_UNITS)[unit])


def format_duration(duration):
    """
    Formats a duration with the largest unit that represents it exactly.

    :raises: ValueError if the duration has a sub-second part.
    """
    seconds = duration.total_seconds()
    if seconds != int(seconds):
        raise ValueError('durations have a 1 second resolution')
    seconds = int(seconds)
    for unit, size in _DURATION_UNITS:
        if seconds % size == 0:
            return '%d%s' % (seconds // size, unit)


class TimeInterval(object):
    """
    A closed time interval ``[start, end]``.
    """
    def __init__(self, start, end):
        if end < start:
            raise ValueError('interval ends before it starts: %s/%s' % (
                format_time(start), format_time(end)))
        self.start = start
        self.end = end

    @property
    def duration(self):
        return self.end - self.start

    def contains(self, point):
        return self.start <= point <= self.end

    def __eq__(self, other):
        return (isinstance(other, TimeInterval) and
                (self.start, self.end) == (other.start, other.end))

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.start, self.end))

    def __str__(self):
        return '%s/%s' % (format_time(self.start), format_time(self.end))

    def __repr__(self):
        return 'TimeInterval(%s)' % self


class TimeSeriesSpec(object):
    """
    A strictly increasing, non empty series of time points.
    """
    def __init__(self, points):
        points = tuple(points)
        if not points:
            raise ValueError('a time series needs at least one point')
        for prev, nxt in zip(points, points[1:]):
            if not prev < nxt:
                raise ValueError('time series must be strictly increasing')
        self.points = points

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        return (isinstance(other, TimeSeriesSpec) and
                self.points == other.points)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.points)

    def __str__(self):
        return ';'.join(format_time(p) for p in self.points)

    def __repr__(self):
        return 'TimeSeriesSpec(%s)' % self


class TimeSpec(object):
    """
    Tagged union of the three time shapes. Hashable, so that it can be used
    in cache keys.
    """
    INSTANT = 'instant'
    INTERVAL = 'interval'
    SERIES = 'series'
    SHAPES = (INSTANT, INTERVAL, SERIES)

    def __init__(self, shape, value):
        if shape not in self.SHAPES:
            raise ValueError('unknown time shape: %r' % (shape, ))
        expected = {self.INSTANT: datetime.datetime,
                    self.INTERVAL: TimeInterval,
                    self.SERIES: TimeSeriesSpec}[shape]
        if not isinstance(value, expected):
            raise TypeError('a time %s needs a %s' % (shape,
                                                      expected.__name__))
        self.shape = shape
        self.value = value

    @classmethod
    def instant(cls, point):
        return cls(cls.INSTANT, parse_time(point))

    @classmethod
    def interval(cls, start, end):
        return cls(cls.INTERVAL, TimeInterval(parse_time(start),
                                              parse_time(end)))

    @classmethod
    def series(cls, points):
        return cls(cls.SERIES, TimeSeriesSpec(parse_time(p) for p in points))

    @property
    def is_instant(self):
        return self.shape == self.INSTANT

    @property
    def is_interval(self):
        return self.shape == self.INTERVAL

    @property
    def is_series(self):
        return self.shape == self.SERIES

    @property
    def reference(self):
        """
        Time point used to order observations: the instant itself, the end
        of an interval or the last point of a series.
        """
        if self.is_instant:
            return self.value
        if self.is_interval:
            return self.value.end
        return self.value.points[-1]

    def contains(self, point):
        """ Tells whether a time point belongs to the time spec """
        if self.is_instant:
            return point == self.value
        if self.is_interval:
            return self.value.contains(point)
        return point in self.value.points

    def shifted(self, delta):
        """ Returns an instant time spec moved by ``delta`` """
        assert self.is_instant
        return TimeSpec(self.INSTANT, self.value + delta)

    def __eq__(self, other):
        return (isinstance(other, TimeSpec) and
                (self.shape, self.value) == (other.shape, other.value))

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.shape, self.value))

    def __str__(self):
        if self.is_instant:
            return format_time(self.value)
        return str(self.value)

    def __repr__(self):
        return 'TimeSpec(%s, %s)' % (self.shape, self)


def parse_timespec(text):
    """
    Parses a time spec: ``t`` (instant), ``a/b`` (interval) or
    ``t1;t2;...`` (series).
    """
    if ';' in text:
        return TimeSpec.series([p for p in text.split(';') if p.strip()])
    if '/' in text:
        start, end = text.split('/', 1)
        return TimeSpec.interval(start, end)
    return TimeSpec.instant(text)


def within_radius(t, obs, radius):
    """
    Tells whether the observation time ``obs`` is within ``radius`` of the
    time of interest ``t``.

    :raises: ValueError for a negative radius
    """
    if radius < datetime.timedelta(0):
        raise ValueError('negative radius: %s' % radius)
    return abs(t - obs) <= radius


def _distance_key(t):
    return lambda point: (abs(t - point), point)


def nearest(ts, t):
    """
    Returns the point of ``ts`` nearest to ``t``; ties are broken toward the
    earlier point.

    :raises: ValueError if ``ts`` is empty
    """
    ts = list(ts)
    if not ts:
        raise ValueError('no time point to choose from')
    return min(ts, key=_distance_key(t))


def k_nearest(ts, t, k):
    """
    Returns up to ``k`` distinct points of ``ts`` nearest to ``t`` (ties
    toward the earlier points), as a sorted :class:`TimeSeriesSpec`.

    :raises: ValueError if ``ts`` is empty or ``k < 1``
    """
    if k < 1:
        raise ValueError('k must be >= 1')
    ts = sorted(set(ts))
    if not ts:
        raise ValueError('no time point to choose from')
    chosen = sorted(ts, key=_distance_key(t))[:k]
    return TimeSeriesSpec(sorted(chosen))


def latest_at_or_before(ts, t):
    """
    Returns the latest point of the sorted list ``ts`` that is not after
    ``t``, or None.
    """
    index = bisect.bisect_right(ts, t)
    if index == 0:
        return None
    return ts[index - 1]
