"""
Test the knowledge base graph and its validation.
"""
import datetime

import pytest

from naive.api import kb as kb_module
from naive.api.density import (
    EventSet, Range, make_delta, make_pmf, make_uniform)
from naive.api.diagnostics import Codes
from naive.api.errors import KnowledgeBaseError, UnknownVariableError
from naive.api.kb import (
    Arith, BayesFusion, CausalBalance, KnowledgeBase, LinearFit, MinPoints,
    NearestObs, RankedChain, Ref, Threshold, Trend, VariableDef, Within,
    interval_partition, radius_of, validate)
from naive.api.timebase import TimeSpec
from test.helpers import load_fixture


HOURS_12 = datetime.timedelta(hours=12)


def weight_kb():
    kb = KnowledgeBase()
    weight = kb.add_range('Weight', Range.cardinal(1, 300, unit='kg'))
    kb.datum('ReportedWeight', weight)
    kb.constant('UnknownWeight', weight, make_uniform(1, 300, weight))
    kb.inference('CurrentWeight', weight, NearestObs(
        'ReportedWeight', HOURS_12, fallback='UnknownWeight'))
    return kb


def codes(kb):
    return sorted(set(d.code for d in validate(kb)))


def test_builder():
    kb = weight_kb()
    assert len(kb) == 3
    assert kb.names() == ['ReportedWeight', 'UnknownWeight', 'CurrentWeight']
    assert 'CurrentWeight' in kb
    assert kb['ReportedWeight'].is_datum
    assert kb.get('UnknownWeight').is_constant
    assert kb.ranges['Weight'].name == 'Weight'
    assert validate(kb) == []
    with pytest.raises(UnknownVariableError):
        kb.get('Height')
    with pytest.raises(KnowledgeBaseError):
        kb.datum('ReportedWeight', kb.ranges['Weight'])
    with pytest.raises(KnowledgeBaseError):
        kb.add_range('Weight', Range.cardinal(0, 1))
    with pytest.raises(KnowledgeBaseError):
        VariableDef('X', 'observation', kb.ranges['Weight'])
    with pytest.raises(KnowledgeBaseError):
        Arith('pow', 'a', 'b')


def test_time_shapes():
    weight = Range.cardinal(1, 300)
    every = VariableDef('X', VariableDef.DATUM, weight)
    assert every.time_shapes == TimeSpec.SHAPES
    only = VariableDef('Y', VariableDef.DATUM, weight,
                       time_shapes=['interval', 'instant'])
    assert only.time_shapes == ('instant', 'interval')
    assert only.accepts('instant')
    assert not only.accepts('series')


def test_value_semantics():
    assert NearestObs('D', HOURS_12) == NearestObs('D', HOURS_12)
    assert NearestObs('D', HOURS_12) != NearestObs('D', HOURS_12, 'F')
    assert Ref('A') != NearestObs('A', HOURS_12)
    assert weight_kb() == weight_kb()
    other = weight_kb()
    other.datum('Extra', other.ranges['Weight'])
    assert other != weight_kb()


def test_references():
    chain = RankedChain([
        (NearestObs('D', HOURS_12), Within('E', HOURS_12)),
        (Ref('F'), None)])
    assert chain.references() == {'D', 'E', 'F'}
    assert chain.children() == [NearestObs('D', HOURS_12), Ref('F')]
    assert CausalBalance('B', 'I', 'O', fallback='U').references() == {
        'B', 'I', 'O', 'U'}
    assert NearestObs('D', 'Radius').references() == {'D', 'Radius'}
    assert LinearFit('D').references() == {'D'}
    assert BayesFusion(['A', 'B']).references() == {'A', 'B'}
    assert Trend('W', HOURS_12).references() == {'W'}


def test_dependents_of_weight_fixture():
    kb = load_fixture('weight')
    assert kb.dependents('ReportedWeight') == {
        'CurrentWeight', 'EmpiricalWeightModel'}
    assert kb_module.dependents(kb, 'ReportedIntake') == {
        'IntakeRate', 'CausalWeightModel', 'EmpiricalWeightModel',
        'CurrentWeight'}
    assert kb.dependents('CurrentWeight') == set()
    assert kb_module.dependencies(kb, 'CausalWeightModel') == {
        'AdmissionWeight', 'IntakeRate', 'OutputRate', 'ReportedIntake',
        'ReportedOutput', 'UnknownWeight'}
    with pytest.raises(UnknownVariableError):
        kb.dependents('Height')


def test_topological_order():
    kb = load_fixture('weight')
    order = kb.topological_order()
    assert sorted(order) == sorted(kb.names())
    for u, v in kb.edges():
        assert order.index(u) < order.index(v)


def test_cycles():
    kb = weight_kb()
    weight = kb.ranges['Weight']
    kb.inference('A', weight, Ref('B'))
    kb.inference('B', weight, Ref('A'))
    assert kb.cycles() == [['A', 'B', 'A']]
    assert codes(kb) == [Codes.CYCLE]
    with pytest.raises(KnowledgeBaseError):
        kb.topological_order()
    kb = weight_kb()
    kb.inference('Self', kb.ranges['Weight'], Ref('Self'))
    assert [d.variable for d in validate(kb)] == ['Self']


def test_undefined_reference():
    kb = weight_kb()
    kb.inference('Typo', kb.ranges['Weight'], Ref('CurentWeight'))
    found = validate(kb)
    assert [d.code for d in found] == [Codes.UNDEFINED]
    assert found[0].variable == 'Typo'
    assert 'CurentWeight' in found[0].message


def test_range_mismatch_and_kinds():
    kb = weight_kb()
    level = Range.ordinal(['low', 'high'])
    kb.inference('Level', level, Ref('CurrentWeight'))
    assert codes(kb) == [Codes.RANGE_MISMATCH]
    kb = weight_kb()
    kb.inference('Sum', Range.ordinal(['low', 'high']),
                 Arith('add', 'CurrentWeight', 'CurrentWeight'))
    assert codes(kb) == [Codes.KIND]
    kb = weight_kb()
    kb.datum('Sex', Range.categorical(['female', 'male']))
    kb.inference('Sum', kb.ranges['Weight'],
                 Arith('add', 'CurrentWeight', 'Sex'))
    assert codes(kb) == [Codes.KIND]


def test_threshold_checks():
    glucose = Range.cardinal(0, 600)
    level = Range.ordinal(['hypo', 'normo', 'hyper'])
    partition = interval_partition(('hypo', 0, 70, True, False),
                                   ('normo', 70, 120),
                                   ('hyper', 120, 600, False, True))
    kb = KnowledgeBase()
    kb.datum('Glucose', glucose)
    kb.inference('Level', level, Threshold('Glucose', partition))
    assert validate(kb) == []
    kb = KnowledgeBase()
    kb.datum('Glucose', glucose)
    kb.inference('Level', level, Threshold('Glucose', partition[:2]))
    assert codes(kb) == [Codes.COVERAGE]
    kb = KnowledgeBase()
    kb.datum('Glucose', glucose)
    kb.inference('Level', level, Threshold('Glucose', [
        ('low', EventSet.interval(0, 600))]))
    assert codes(kb) == [Codes.LABEL]


def test_nearest_obs_checks():
    kb = weight_kb()
    kb.inference('Bad', kb.ranges['Weight'], NearestObs(
        'UnknownWeight', HOURS_12))
    assert codes(kb) == [Codes.NOT_DATUM]
    kb = weight_kb()
    kb.inference('Bad', kb.ranges['Weight'], NearestObs(
        'ReportedWeight', -HOURS_12))
    assert codes(kb) == [Codes.PARAMETER]
    kb = weight_kb()
    kb.inference('Bad', kb.ranges['Weight'], NearestObs(
        'ReportedWeight', 'UnknownWeight'))
    assert codes(kb) == [Codes.PARAMETER]
    kb = weight_kb()
    kb.inference('Bad', kb.ranges['Weight'], NearestObs(
        'ReportedWeight', HOURS_12), time_shapes=['interval'])
    assert codes(kb) == [Codes.TIME_SHAPE]


def test_radius_constants():
    kb = weight_kb()
    duration = Range.cardinal(0, 48, unit='h')
    kb.constant('Radius', duration, make_delta(6, duration))
    kb.inference('Near', kb.ranges['Weight'], NearestObs(
        'ReportedWeight', 'Radius'))
    assert validate(kb) == []
    assert radius_of(kb, 'Radius') == datetime.timedelta(hours=6)
    assert radius_of(kb, HOURS_12) == HOURS_12
    with pytest.raises(KnowledgeBaseError):
        radius_of(kb, 'UnknownWeight')


def test_linear_fit_checks():
    kb = weight_kb()
    kb.inference('Fit', kb.ranges['Weight'], LinearFit(
        'ReportedWeight', n=10, min_points=1))
    assert codes(kb) == [Codes.PARAMETER]
    kb = weight_kb()
    kb.inference('Fit', kb.ranges['Weight'], LinearFit(
        'ReportedWeight', n=0, min_points=3))
    assert codes(kb) == [Codes.PARAMETER]
    kb = weight_kb()
    kb.inference('Fit', kb.ranges['Weight'], LinearFit(
        'ReportedWeight', fallback='Missing'))
    assert codes(kb) == [Codes.UNDEFINED]


def test_causal_balance_checks():
    kb = load_fixture('weight')
    assert validate(kb) == []
    kb = weight_kb()
    flow = Range.cardinal(0, 20)
    kb.datum('In', flow)
    kb.datum('Out', flow)
    kb.inference('Model', kb.ranges['Weight'], CausalBalance(
        'CurrentWeight', 'In', 'Out'))
    assert codes(kb) == [Codes.NOT_DATUM]
    kb = weight_kb()
    kb.datum('In', flow)
    kb.datum('Out', flow)
    kb.inference('Model', kb.ranges['Weight'], CausalBalance(
        'ReportedWeight', 'In', 'Out', rate_unit=datetime.timedelta(0)))
    assert codes(kb) == [Codes.PARAMETER]


def test_chain_checks():
    kb = weight_kb()
    weight = kb.ranges['Weight']
    kb.inference('Chain', weight, RankedChain([
        (NearestObs('ReportedWeight', HOURS_12),
         Within('ReportedWeight', HOURS_12)),
        (Ref('UnknownWeight'), None)]))
    assert validate(kb) == []
    kb = weight_kb()
    kb.inference('Chain', weight, RankedChain([
        (Ref('UnknownWeight'), None),
        (Ref('UnknownWeight'), MinPoints('ReportedWeight', 1, HOURS_12))]))
    assert codes(kb) == [Codes.DEFINITION]
    kb = weight_kb()
    kb.inference('Chain', weight, RankedChain([
        (Ref('UnknownWeight'), Within('CurrentWeight', HOURS_12)),
        (Ref('UnknownWeight'), None)]))
    assert codes(kb) == [Codes.NOT_DATUM]


def radius_chain_kb(radius, value=6):
    kb = weight_kb()
    hours = Range.cardinal(-48, 48, unit='h')
    kb.constant('Radius', hours, make_delta(value, hours))
    kb.inference('Chain', kb.ranges['Weight'], RankedChain([
        (NearestObs('ReportedWeight', HOURS_12),
         Within('ReportedWeight', radius)),
        (Ref('UnknownWeight'), None)]))
    return kb


def test_criterion_radius_constant():
    kb = radius_chain_kb('Radius')
    assert validate(kb) == []
    assert kb.dependencies('Chain') >= {'Radius'}
    assert 'Chain' in kb.dependents('Radius')
    assert codes(radius_chain_kb('UnknownWeight')) == [Codes.PARAMETER]
    assert codes(radius_chain_kb('Radius', value=-1)) == [Codes.PARAMETER]
    assert codes(radius_chain_kb('Missing')) == [Codes.UNDEFINED]


@pytest.mark.parametrize('criterion', [
    Within('ReportedWeight', -HOURS_12),
    MinPoints('ReportedWeight', 0, HOURS_12),
    MinPoints('ReportedWeight', 2, -HOURS_12),
])
def test_criterion_parameters(criterion):
    kb = weight_kb()
    kb.inference('Chain', kb.ranges['Weight'], RankedChain([
        (NearestObs('ReportedWeight', HOURS_12), criterion),
        (Ref('UnknownWeight'), None)]))
    assert codes(kb) == [Codes.PARAMETER]


def test_fusion_and_trend_checks():
    kb = weight_kb()
    kb.inference('Fused', kb.ranges['Weight'], BayesFusion(['CurrentWeight']))
    assert codes(kb) == [Codes.DEFINITION]
    kb = weight_kb()
    trend = Range.ordinal(['decreasing', 'stable', 'increasing'])
    kb.inference('Trend', trend, Trend('CurrentWeight', HOURS_12, 0.5))
    assert validate(kb) == []
    kb = weight_kb()
    kb.inference('Trend', Range.ordinal(['down', 'flat', 'up']), Trend(
        'CurrentWeight', HOURS_12))
    assert codes(kb) == [Codes.TREND_RANGE]
    kb = weight_kb()
    kb.inference('Trend', trend, Trend('CurrentWeight', HOURS_12, -1))
    assert codes(kb) == [Codes.PARAMETER]


def test_definition_checks():
    weight = Range.cardinal(1, 300)
    kb = KnowledgeBase([
        VariableDef('D', VariableDef.DATUM, weight, procedure=Ref('C')),
        VariableDef('C', VariableDef.CONSTANT, weight),
        VariableDef('I', VariableDef.INFERENCE, weight)])
    assert [d.variable for d in validate(kb)] == ['D', 'C', 'I']
    assert codes(kb) == [Codes.DEFINITION]
    kb = KnowledgeBase([VariableDef(
        'C', VariableDef.CONSTANT, weight,
        density=make_pmf({'a': 1}, Range.categorical(['a'])))])
    assert codes(kb) == [Codes.RANGE_MISMATCH]


def test_validation_is_silent_on_fixtures():
    for name in ('weight', 'glucose', 'intake', 'trend'):
        assert validate(load_fixture(name)) == []
