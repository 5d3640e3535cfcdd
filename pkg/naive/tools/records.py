# -*- coding: utf-8 -*-
"""
This module decodes observation records.

An observation file is a CSV file with a ``datum,time,value`` header and one
record per line::

    datum,time,value
    ReportedWeight,Day1T08:00,exact:70
    ReportedWeight,2000-01-02T08:00:00Z,range:68,72
    GlucoseLevel,Day1T08:00,pmf:{hypo:0,normo:3,hyper:1}
    OralIntake,Day1T00:00/Day1T12:00,exact:1.0

The value is the last column and may contain commas. The time is an
ISO-8601 instant (or ``Day<n>T<hh:mm>``) or an ``a/b`` interval.
"""
import csv
import io
import logging
import re

from naive.api.density import make_delta, make_pmf, make_uniform
from naive.api.engine import Observation, as_timespec
from naive.api.errors import NaiveError, RecordError


def _logger():
    """ Returns module's logger """
    return logging.getLogger(__name__)


HEADER = ['datum', 'time', 'value']

_PMF_RE = re.compile(r'^\{(.*)\}$')


def decode_value(text, range_):
    """
    Decodes a value form: ``exact:<x>``, ``range:<lo>,<hi>`` or
    ``pmf:{label:w,...}``.

    For discrete ranges ``exact:`` takes a label and ``range:`` takes two
    labels of an ordinal range (every label in between gets the same
    probability).

    :raises: ValueError, NaiveError
    """
    form, sep, body = text.strip().partition(':')
    if not sep:
        raise ValueError('value %r has no form (exact:, range: or pmf:)' %
                         text)
    body = body.strip()
    if form == 'exact':
        if range_.is_discrete:
            return make_pmf({body: 1.0}, range_)
        return make_delta(float(body), range_)
    if form == 'range':
        lower, sep, upper = body.partition(',')
        if not sep:
            raise ValueError('range value needs two bounds: %r' % text)
        if range_.is_cardinal:
            return make_uniform(float(lower), float(upper), range_)
        if range_.kind != range_.ORDINAL:
            raise ValueError('range values need an ordinal or cardinal '
                             'range')
        first, last = range_.index(lower.strip()), range_.index(upper.strip())
        if first > last:
            raise ValueError('empty label range %r' % body)
        return make_pmf([(l, 1.0) for l in range_.labels[first:last + 1]],
                        range_)
    if form == 'pmf':
        match = _PMF_RE.match(body)
        if match is None:
            raise ValueError('pmf value must be written {label:w,...}')
        weights = []
        for item in match.group(1).split(','):
            label, sep, weight = item.partition(':')
            if not sep:
                raise ValueError('invalid pmf item %r' % item)
            weights.append((label.strip(), float(weight)))
        return make_pmf(weights, range_)
    raise ValueError('unknown value form %r' % form)


def decode_record(kb, datum, time, value):
    """
    Decodes one record into an :class:`naive.api.engine.Observation`.

    :raises: ValueError, NaiveError
    """
    variable = kb.get(datum.strip())
    if not variable.is_datum:
        raise ValueError('%s is not a datum' % variable.name)
    return Observation(variable.name, as_timespec(time.strip()),
                       decode_value(value, variable.range))


def read_records(stream, kb):
    """
    Reads an observation file.

    Blank lines and lines starting with ``#`` are skipped.

    :returns: list of observations, in file order
    :raises: RecordError listing every offending line
    """
    observations = []
    problems = []
    header_seen = False
    for number, row in enumerate(csv.reader(stream), 1):
        if not row or not ''.join(row).strip() or \
                row[0].lstrip().startswith('#'):
            continue
        if not header_seen:
            header_seen = True
            if [c.strip() for c in row] != HEADER:
                problems.append((number, 'expected header %s' %
                                 ','.join(HEADER)))
            continue
        if len(row) < 3:
            problems.append((number, 'expected 3 columns, got %d' %
                             len(row)))
            continue
        try:
            observations.append(decode_record(kb, row[0], row[1],
                                              ','.join(row[2:])))
        except (ValueError, NaiveError) as e:
            problems.append((number, str(e)))
    if problems:
        raise RecordError(problems)
    _logger().debug('%d observation records read', len(observations))
    return observations


def load_records(path, kb, encoding='utf-8'):
    """
    Reads an observation file from disk.

    :raises: IOError, RecordError
    """
    with io.open(path, encoding=encoding, newline='') as stream:
        return read_records(stream, kb)
