"""
Test the observation records decoder.
"""
import io

import pytest

from naive.api.density import Range
from naive.api.errors import NaiveError, RecordError
from naive.api.timebase import TimeSpec
from naive.tools.records import (
    decode_record, decode_value, load_records, read_records)
from test.helpers import files_path, load_fixture


WEIGHT = Range.cardinal(1, 300, unit='kg')
LEVEL = Range.ordinal(['hypo', 'normo', 'hyper'])
SEX = Range.categorical(['female', 'male'])


def test_cardinal_values():
    exact = decode_value('exact:70', WEIGHT)
    assert exact.is_delta and exact.mean == 70
    inexact = decode_value(' range: 68, 72 ', WEIGHT)
    assert inexact.support().lower == 68
    assert inexact.support().upper == 72
    assert inexact.mean == 70


def test_discrete_values():
    assert decode_value('exact:normo', LEVEL).pmf == {
        'hypo': 0, 'normo': 1, 'hyper': 0}
    assert decode_value('range:normo,hyper', LEVEL).pmf == {
        'hypo': 0, 'normo': 0.5, 'hyper': 0.5}
    pmf = decode_value('pmf:{hypo:0, normo:3, hyper:1}', LEVEL).pmf
    assert pmf['normo'] == pytest.approx(0.75)
    assert decode_value('exact:male', SEX).pmf['male'] == 1


@pytest.mark.parametrize('text, range_', [
    ('70', WEIGHT),
    ('approx:70', WEIGHT),
    ('exact:heavy', WEIGHT),
    ('exact:900', WEIGHT),
    ('range:70', WEIGHT),
    ('range:72,68', WEIGHT),
    ('range:female,male', SEX),
    ('range:hyper,hypo', LEVEL),
    ('exact:low', LEVEL),
    ('pmf:hypo:1', LEVEL),
    ('pmf:{hypo}', LEVEL),
    ('pmf:{hypo:-1, normo:2}', LEVEL),
])
def test_invalid_values(text, range_):
    with pytest.raises((ValueError, NaiveError)):
        decode_value(text, range_)


def test_decode_record():
    kb = load_fixture('intake')
    obs = decode_record(kb, ' OralIntake ', 'Day1T00:00/Day1T12:00',
                        'exact:1.0')
    assert obs.datum == 'OralIntake'
    assert obs.time == TimeSpec.interval('Day1T00:00', 'Day1T12:00')
    assert obs.density.mean == 1
    with pytest.raises(ValueError):
        decode_record(kb, 'Intake', 'Day1T00:00', 'exact:1')


def test_read_records():
    kb = load_fixture('weight')
    observations = load_records(files_path('weight_obs.csv'), kb)
    assert [o.density.mean for o in observations] == [70, 71, 72]
    assert [str(o.time) for o in observations][0] == \
        '2000-01-01T00:00:00+00:00'
    check = load_records(files_path('weight_check.csv'), kb)
    assert check[0].density.support().upper == 71
    glucose = load_records(files_path('glucose_obs.csv'),
                           load_fixture('glucose'))
    assert glucose[0].density.mean == 100


def test_record_problems():
    kb = load_fixture('weight')
    with pytest.raises(RecordError) as info:
        load_records(files_path('bad_obs.csv'), kb)
    problems = info.value.problems
    assert [line for line, _ in problems] == [3, 4, 5, 6]
    assert 'unknown variable: Height' in problems[0][1]
    assert problems[2][1] == 'expected 3 columns, got 2'
    assert 'line 6' in str(info.value)


def test_header():
    kb = load_fixture('weight')
    with pytest.raises(RecordError) as info:
        read_records(io.StringIO('time,datum,value\n'), kb)
    assert info.value.problems[0][0] == 1
    assert read_records(io.StringIO(''), kb) == []
    assert read_records(io.StringIO('# nothing yet\ndatum,time,value\n'),
                        kb) == []
