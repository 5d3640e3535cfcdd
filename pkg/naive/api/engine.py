# -*- coding: utf-8 -*-
"""
This module contains the inference engine: evaluation by backward chaining,
trend inference, forward chained cache invalidation and contradiction
detection.

Every operation receives the :class:`naive.api.context.EvalContext` it works
on as first argument.
"""
import datetime
import logging
import math

import numpy as np

from naive.api.density import (
    ADD, MUL, SUB, EventSet, Range, arith_range, bayes_fuse, combine_arith,
    format_number, likelihood, make_delta, make_pmf, normal_cells, prob_in,
    support, threshold_map)
from naive.api.errors import (
    ContradictionError, InferenceError, KnowledgeBaseError,
    MissingDatumError, RangeError, RecursionGuardError, ShapeError)
from naive.api.kb import TREND_LABELS, radius_of
from naive.api.timebase import (
    TimeSpec, format_duration, k_nearest, latest_at_or_before, nearest,
    parse_timespec, within_radius)
from naive.api.trace import TraceNode


def _logger():
    """ Returns module's logger """
    return logging.getLogger(__name__)


#: Length of the time unit of linear fit offsets
FIT_UNIT = datetime.timedelta(days=1)


def as_timespec(t):
    """
    Converts a time point, an ISO-8601 text or a time spec to a
    :class:`naive.api.timebase.TimeSpec`.
    """
    if isinstance(t, TimeSpec):
        return t
    if isinstance(t, datetime.datetime):
        return TimeSpec.instant(t)
    return parse_timespec(t)


def describe(density):
    """
    One line description of a density, used in traces.
    """
    if density.is_discrete:
        return ', '.join('%s=%.6g' % item for item in density.discrete)
    mean, variance = density.moments()
    return 'mean=%.6g variance=%.6g' % (mean, variance)


class Observation(object):
    """
    A reported value of a datum: a Dirac density for exact readings, a
    wider density for inexact ones.
    """
    def __init__(self, datum, time, density):
        """
        :param datum: name of the datum
        :param time: time point, time spec (instant or interval) or text
        :param density: :class:`naive.api.density.Density`
        """
        self.datum = datum
        self.time = as_timespec(time)
        self.density = density

    def __eq__(self, other):
        return (isinstance(other, Observation) and
                (self.datum, self.time) == (other.datum, other.time) and
                self.density == other.density)

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __repr__(self):
        return 'Observation(%r, %s, %r)' % (self.datum, self.time,
                                            self.density)


class Contradiction(object):
    """
    An observation the existing knowledge assigns a probability at or below
    the contradiction threshold.
    """
    def __init__(self, datum, time, observed, model, inferred, probability):
        self.datum = datum
        self.time = time
        #: the observed density
        self.observed = observed
        #: name of the model inference
        self.model = model
        #: density the model inferred without the observation
        self.inferred = inferred
        #: probability the model assigns to the observation
        self.probability = probability

    def to_dict(self):
        """
        Serializes a contradiction to a dictionary, ready for json.
        """
        return {'datum': self.datum, 'time': str(self.time),
                'model': self.model, 'probability': self.probability,
                'observed': self.observed.to_dict(),
                'inferred': self.inferred.to_dict()}

    def __str__(self):
        return '%s at %s contradicts %s (p=%.6g)' % (
            self.datum, self.time, self.model, self.probability)

    def __repr__(self):
        return 'Contradiction(%r, %s, %r, %r)' % (
            self.datum, self.time, self.model, self.probability)


def trend_pmf(before, after, band, out_range=None, grid=None,
              zero_neighborhood=None):
    """
    Trend of a value known by ``before`` and ``after`` (taken as
    independent): ``P(D < -band)``, ``P(-band <= D <= band)`` and
    ``P(D > band)`` where ``D = after - before``.
    """
    if out_range is None:
        out_range = Range.ordinal(TREND_LABELS)
    if not after.range.is_cardinal:
        raise RangeError('trends need cardinal densities, got %r' %
                         after.range, after.range)
    span = after.range.span
    difference = combine_arith(
        SUB, after, before, Range.cardinal(-span, span, after.range.unit),
        grid=grid, zero_neighborhood=zero_neighborhood)
    band = min(float(band), span)
    weights = {'decreasing': 0.0, 'increasing': 0.0}
    weights['stable'] = prob_in(difference, EventSet.interval(-band, band))
    if band < span:
        weights['decreasing'] = prob_in(
            difference, EventSet.interval(-span, -band, upper_closed=False))
        weights['increasing'] = prob_in(
            difference, EventSet.interval(band, span, lower_closed=False))
    return make_pmf(weights, out_range)


def observation_probability(inferred, observed):
    """
    Probability a model density assigns to an observation: the local
    density plus coinciding atom mass for exact readings, the probability of
    the reading support otherwise.
    """
    if inferred.is_discrete:
        return prob_in(inferred, support(observed))
    if observed.is_delta:
        return likelihood(inferred, observed.atoms[0][0])
    return prob_in(inferred, EventSet.of_intervals([support(observed)]))


class _Evaluator(object):
    """
    Backward chaining over the knowledge base of a context.

    Keeps the recursion depth and the trace of one top level call.
    """
    def __init__(self, ctx):
        self.ctx = ctx
        self.kb = ctx.kb
        self.depth = 0
        self.root = TraceNode(None, None)
        self._nodes = [self.root]

    # -------------------
    # Variables
    # -------------------
    def evaluate(self, name, t):
        variable = self.kb.get(name)
        if not variable.accepts(t.shape):
            raise ShapeError(name, t.shape, variable.time_shapes)
        if t.is_series:
            node = self._nodes[-1].add_child(TraceNode(name, str(t),
                                                       'series'))
            self._nodes.append(node)
            try:
                return tuple(self._evaluate(variable, TimeSpec(
                    TimeSpec.INSTANT, point)) for point in t.value)
            finally:
                self._nodes.pop()
        return self._evaluate(variable, t)

    def _evaluate(self, variable, t):
        if self.depth >= self.ctx.recursion_limit:
            raise RecursionGuardError(variable.name,
                                      self.ctx.recursion_limit)
        node = self._nodes[-1].add_child(TraceNode(variable.name, str(t)))
        self._nodes.append(node)
        self.depth += 1
        try:
            if variable.is_constant:
                node.procedure = variable.CONSTANT
                density = variable.density
            elif variable.is_datum:
                node.procedure = variable.DATUM
                density = self.resolve(variable.name, t)
            else:
                density = self._infer(variable, t, node)
        finally:
            self._nodes.pop()
            self.depth -= 1
        node.summary = describe(density)
        return density

    def _infer(self, variable, t, node):
        cache = self.ctx.cache
        if cache.enabled:
            density = cache.get(variable.name, t)
            if density is not None:
                node.procedure = variable.procedure.KEYWORD
                node.cache_hit = True
                return density
        density = self._run(variable.procedure, variable, t, node)
        cache.put(variable.name, t, density)
        return density

    def resolve(self, name, t):
        observations = self.ctx.store.at(name, t)
        if not observations:
            raise MissingDatumError(name, t)
        if len(observations) == 1:
            return observations[0].density
        try:
            return bayes_fuse([o.density for o in observations])
        except ContradictionError:
            raise ContradictionError(
                'observations of %s at %s are contradictory' % (name, t),
                variable=name, time=t)

    # -------------------
    # Procedures
    # -------------------
    def _run(self, procedure, variable, t, node):
        node.procedure = procedure.KEYWORD
        if procedure.INSTANT_ONLY and not t.is_instant:
            raise ShapeError(variable.name, t.shape, (TimeSpec.INSTANT, ))
        _logger().log(5, 'evaluating %s at %s with %s', variable.name, t,
                      procedure.KEYWORD)
        method = getattr(self, '_' + type(procedure).__name__.lower())
        return method(procedure, variable, t, node)

    def _fallback(self, procedure, variable, t, node, error):
        if not procedure.fallback:
            raise error
        node.branch = 2
        _logger().info('%s at %s: %s, falling back on %s', variable.name, t,
                       error, procedure.fallback)
        return self.evaluate(procedure.fallback, t)

    def _ref(self, procedure, variable, t, node):
        return self.evaluate(procedure.target, t)

    def _arith(self, procedure, variable, t, node):
        left = self.evaluate(procedure.left, t)
        right = self.evaluate(procedure.right, t)
        return combine_arith(procedure.op, left, right, variable.range,
                             grid=self.ctx.grid,
                             zero_neighborhood=self.ctx.zero_neighborhood)

    def _threshold(self, procedure, variable, t, node):
        source = self.evaluate(procedure.source, t)
        return threshold_map(source, procedure.partition, variable.range)

    def _nearestobs(self, procedure, variable, t, node):
        radius = radius_of(self.kb, procedure.radius)
        instants = self.ctx.store.instants(procedure.datum)
        if instants:
            point = nearest(instants, t.value)
            if within_radius(t.value, point, radius):
                node.branch = 1
                return self.evaluate(procedure.datum,
                                     TimeSpec(TimeSpec.INSTANT, point))
        return self._fallback(procedure, variable, t, node,
                              MissingDatumError(procedure.datum, t))

    def _linearfit(self, procedure, variable, t, node):
        points = sorted(set(o.time.value for o in self.ctx.store.within(
            procedure.datum, t.value, procedure.window)))
        if len(points) < procedure.min_points:
            return self._fallback(procedure, variable, t, node, InferenceError(
                '%d observation(s) of %s within %s of %s, %d needed' % (
                    len(points), procedure.datum, procedure.window, t,
                    procedure.min_points)))
        node.branch = 1
        chosen = list(k_nearest(points, t.value, procedure.n))
        densities = [self.evaluate(procedure.datum,
                                   TimeSpec(TimeSpec.INSTANT, p))
                     for p in chosen]
        offsets = np.array([(p - t.value) / FIT_UNIT for p in chosen])
        values = np.array([d.mean for d in densities])
        slope, intercept = np.polyfit(offsets, values, 1)
        residuals = values - (intercept + slope * offsets)
        rms = math.sqrt(float(np.mean(residuals ** 2)))
        width = float(np.mean([math.sqrt(d.variance) for d in densities]))
        return normal_cells(float(intercept), max(rms, width),
                            variable.range, grid=self.ctx.grid)

    def _causalbalance(self, procedure, variable, t, node):
        anchor = latest_at_or_before(
            self.ctx.store.instants(procedure.base), t.value)
        if anchor is None:
            return self._fallback(procedure, variable, t, node,
                                  MissingDatumError(procedure.base, t))
        try:
            base = self.evaluate(procedure.base,
                                 TimeSpec(TimeSpec.INSTANT, anchor))
            inflow = self.evaluate(procedure.inflow, t)
            outflow = self.evaluate(procedure.outflow, t)
        except MissingDatumError as e:
            return self._fallback(procedure, variable, t, node, e)
        node.branch = 1
        factor = procedure.rate * ((t.value - anchor) / procedure.rate_unit)
        if factor == 0:
            return base
        grid = self.ctx.grid
        zero = self.ctx.zero_neighborhood
        net_range = arith_range(SUB, inflow.range, outflow.range)
        net = combine_arith(SUB, inflow, outflow, net_range, grid, zero)
        factor_range = Range.cardinal(min(0.0, factor), max(0.0, factor))
        change_range = arith_range(MUL, net_range, factor_range)
        change = combine_arith(MUL, net, make_delta(factor, factor_range),
                               change_range, grid, zero)
        return combine_arith(ADD, base, change, variable.range, grid, zero)

    def _rankedchain(self, procedure, variable, t, node):
        for index, (branch, criterion) in enumerate(procedure.branches, 1):
            if criterion is not None and not criterion.holds(
                    self.ctx.store, t, self.kb):
                continue
            node.branch = index
            child = node.add_child(TraceNode(variable.name, str(t)))
            self._nodes.append(child)
            try:
                density = self._run(branch, variable, t, child)
            finally:
                self._nodes.pop()
            child.summary = describe(density)
            return density
        raise InferenceError('no branch of %s applies at %s' % (
            variable.name, t))

    def _bayesfusion(self, procedure, variable, t, node):
        densities = [self.evaluate(s, t) for s in procedure.sources]
        try:
            return bayes_fuse(densities)
        except ContradictionError:
            raise ContradictionError(
                'sources of %s (%s) have disjoint supports at %s' % (
                    variable.name, ', '.join(procedure.sources), t),
                variable=variable.name, time=t)

    def _trend(self, procedure, variable, t, node):
        return self.trend(procedure, t, variable.range)

    def trend(self, procedure, t, out_range):
        before = self.evaluate(procedure.source,
                               t.shifted(-procedure.epsilon))
        after = self.evaluate(procedure.source, t.shifted(procedure.epsilon))
        return trend_pmf(before, after, procedure.band, out_range,
                         self.ctx.grid, self.ctx.zero_neighborhood)


# -------------------
# Operations
# -------------------
def evaluate(ctx, name, t):
    """
    Evaluates a variable by backward chaining.

    :param ctx: :class:`naive.api.context.EvalContext`
    :param name: variable name
    :param t: time spec (or time point/text, see :func:`as_timespec`)
    :returns: a :class:`naive.api.density.Density`, or a tuple of densities
        (one per instant) for a series.

    :raises: UnknownVariableError, ShapeError, RecursionGuardError,
        MissingDatumError, InferenceError, ContradictionError
    """
    t = as_timespec(t)
    with ctx.lock:
        return _Evaluator(ctx).evaluate(name, t)


def explain(ctx, name, t):
    """
    Evaluates a variable and returns the evaluation trace
    (:class:`naive.api.trace.TraceNode`).
    """
    t = as_timespec(t)
    with ctx.lock:
        evaluator = _Evaluator(ctx)
        evaluator.evaluate(name, t)
    return evaluator.root.children[0]


def resolve_datum(ctx, name, t):
    """
    Returns the density of a datum at exactly ``t``: the observation
    recorded at ``t``, or the Bayes fusion of all of them if there are
    several. Data are never interpolated.

    :raises: MissingDatumError if nothing was observed at ``t``
    """
    variable = ctx.kb.get(name)
    if not variable.is_datum:
        raise KnowledgeBaseError('%s is not a datum' % name)
    with ctx.lock:
        return _Evaluator(ctx).resolve(name, as_timespec(t))


def eval_trend(ctx, spec, t, out_range=None):
    """
    Evaluates a :class:`naive.api.kb.Trend` procedure at the instant ``t``.

    :returns: pmf over ``decreasing < stable < increasing``
    :raises: RangeError when the source is not cardinal, ValueError for a
        non positive epsilon or a negative band, ShapeError
    """
    t = as_timespec(t)
    if not t.is_instant:
        raise ShapeError(spec.source, t.shape, (TimeSpec.INSTANT, ))
    source = ctx.kb.get(spec.source)
    if not source.range.is_cardinal:
        raise RangeError('the trend of %s needs a cardinal variable' %
                         spec.source, source.range)
    if spec.epsilon <= datetime.timedelta(0):
        raise ValueError('trend epsilon must be positive, got %s' %
                         format_duration(spec.epsilon))
    if spec.band < 0:
        raise ValueError('trend band must be non negative, got %s' %
                         format_number(spec.band))
    if out_range is None:
        out_range = Range.ordinal(TREND_LABELS)
    with ctx.lock:
        return _Evaluator(ctx).trend(spec, t, out_range)


def report_observation(ctx, obs):
    """
    Records an observation and removes from the cache every density of the
    variables depending on the observed datum.

    :returns: the removed cache keys, ``(variable, TimeSpec)`` pairs
    :raises: UnknownVariableError, KnowledgeBaseError (not a datum),
        RangeError, ShapeError
    """
    variable = ctx.kb.get(obs.datum)
    if not variable.is_datum:
        raise KnowledgeBaseError('%s is not a datum' % obs.datum)
    if obs.density.range != variable.range:
        raise RangeError('observation of %s over %r, expected %r' % (
            obs.datum, obs.density.range, variable.range), variable.range)
    if obs.time.is_series or not variable.accepts(obs.time.shape):
        raise ShapeError(obs.datum, obs.time.shape, tuple(
            s for s in variable.time_shapes if s != TimeSpec.SERIES))
    with ctx.lock:
        ctx.store.add(obs)
        removed = ctx.cache.invalidate(ctx.kb.dependents(obs.datum))
    _logger().debug('%s reported at %s, %d cached densities removed',
                    obs.datum, obs.time, len(removed))
    return removed


def check_consistency(ctx, obs, model, threshold=None):
    """
    Compares an observation with the model inference paired with its datum.

    The model is evaluated at the observation time from every other
    observation; the observation is contradictory when the model assigns it
    a probability at or below the threshold.

    :param threshold: default is ``ctx.threshold``
    :returns: a :class:`Contradiction` or None
    """
    datum = ctx.kb.get(obs.datum)
    variable = ctx.kb.get(model)
    if not variable.is_inference:
        raise KnowledgeBaseError('%s is not an inference' % model)
    if variable.range != datum.range:
        raise RangeError('%s and %s have different ranges' % (
            model, obs.datum), datum.range)
    if threshold is None:
        threshold = ctx.threshold
    inferred = evaluate(ctx.fork(exclude=obs), model, obs.time)
    p = observation_probability(inferred, obs.density)
    _logger().debug('%s at %s: p=%r under %s', obs.datum, obs.time, p, model)
    if p <= threshold:
        return Contradiction(obs.datum, obs.time, obs.density, model,
                             inferred, p)
    return None
