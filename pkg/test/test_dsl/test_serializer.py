"""
Test the canonical serializer.
"""
import datetime

import pytest

from naive import dsl, fixtures
from naive.api.density import Range, make_delta, make_uniform, mixture
from naive.api.errors import KnowledgeBaseError
from naive.api.kb import KnowledgeBase, NearestObs, Within
from naive.dsl import parse, serialize
from test.helpers import read_file


@pytest.mark.parametrize('name', fixtures.NAMES)
def test_fixture_round_trip(name):
    kb = dsl.load(fixtures.path(name))
    text = serialize(kb)
    again, found = dsl.check(text)
    assert found == []
    assert again == kb
    assert serialize(again) == text


def test_canonical_text():
    text = read_file('grammar.nkb')
    kb = dsl.loads(text)
    expected = [line for line in text.splitlines()
                if line and not line.startswith('#')]
    lines = serialize(kb).splitlines()
    assert [line for line in lines if line] == expected
    # ranges, one blank line, variables
    assert lines.index('') == len(kb.ranges)


def test_defaults_are_written():
    kb = dsl.loads('range W = cardinal 1..300\ndatum D : W\n'
                   'infer F : W = linear_fit(D)\n'
                   'infer B : W = causal_balance(base=D, in=F, out=F)\n'
                   'infer T : ordinal {decreasing < stable < increasing} = '
                   'trend(F, epsilon=1d)\n')
    lines = serialize(kb).splitlines()
    assert lines[3] == ('infer F : W = linear_fit(D, n=10, window=30d, '
                        'min_points=3)')
    assert lines[4] == ('infer B : W = causal_balance(base=D, in=F, out=F, '
                        'rate=1/d)')
    assert lines[5] == ('infer T : ordinal {decreasing < stable < '
                        'increasing} = trend(F, epsilon=1d, band=0)')


def test_programmatic_kb():
    kb = KnowledgeBase()
    weight = kb.add_range('Weight', Range.cardinal(1, 300, unit='kg'))
    kb.datum('ReportedWeight', weight, time_shapes=['instant'])
    kb.constant('Exact', Range.cardinal(0.5, 2), make_delta(
        1.25, Range.cardinal(0.5, 2)))
    kb.inference('Current', weight, NearestObs(
        'ReportedWeight', datetime.timedelta(minutes=90)))
    assert serialize(kb) == (
        'range Weight = cardinal 1..300 unit "kg"\n'
        '\n'
        'datum ReportedWeight : Weight @ instant\n'
        'const Exact : cardinal 0.5..2 = delta(1.25)\n'
        'infer Current : Weight = nearest_obs(ReportedWeight, radius=90m)\n')
    assert parse(serialize(kb))[0] == kb


def test_empty():
    assert serialize(KnowledgeBase()) == ''
    assert serialize(parse('')[0]) == ''


def test_unwritable_constant():
    kb = KnowledgeBase()
    weight = kb.add_range('Weight', Range.cardinal(1, 300))
    kb.constant('Mixed', weight, mixture([0.5, 0.5], [
        make_uniform(1, 10, weight), make_delta(20, weight)]))
    with pytest.raises(KnowledgeBaseError):
        serialize(kb)


CONSTANT_RADIUS = '''range W = cardinal 1..300
range H = cardinal 0..48 unit "h"

datum D : W
const R : H = delta(6)
const U : W = uniform(1, 300)
infer C : W = chain[(nearest_obs(D, radius=12h) if within(D, R)), U]
'''


def test_criterion_radius_constant():
    kb, found = dsl.check(CONSTANT_RADIUS)
    assert found == []
    assert kb['C'].procedure.branches[0][1] == Within('D', 'R')
    assert serialize(kb) == CONSTANT_RADIUS
    kb, found = dsl.check(CONSTANT_RADIUS.replace('within(D, R)',
                                                  'within(D, U)'))
    assert [d.code for d in found] == ['V209']
