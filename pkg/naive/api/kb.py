# -*- coding: utf-8 -*-
"""
This module contains the knowledge base graph: variable definitions (datum,
inference, constant), the procedures used to evaluate inferences and the
validity criteria of ranked chains.

Nodes are variables; arcs go from every variable a procedure reads to the
inference the procedure belongs to. Backward chaining walks the arcs
against their direction (:func:`dependencies`), cache invalidation walks
them forward (:func:`dependents`).
"""
import bisect
import collections
import datetime
import logging
import math

from naive.api import diagnostics
from naive.api.density import (
    OPERATORS, EventSet, Interval, partition_defects)
from naive.api.diagnostics import Codes
from naive.api.errors import KnowledgeBaseError, UnknownVariableError
from naive.api.timebase import TimeSpec


def _logger():
    return logging.getLogger(__name__)


#: Labels of a trend range, in ascending order
TREND_LABELS = ('decreasing', 'stable', 'increasing')

#: Units a radius constant can be expressed in
TIME_UNITS = {'s': 1, 'm': 60, 'h': 3600, 'd': 86400}


class _Node(object):
    """
    Base class of procedures and criteria: value semantics over ``FIELDS``.
    """
    FIELDS = ()

    def _values(self):
        return tuple(getattr(self, f) for f in self.FIELDS)

    def __eq__(self, other):
        return type(self) is type(other) and self._values() == other._values()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((type(self).__name__, ) + tuple(
            v if not isinstance(v, list) else tuple(v)
            for v in self._values()))

    def __repr__(self):
        return '%s(%s)' % (type(self).__name__, ', '.join(
            '%s=%r' % (f, getattr(self, f)) for f in self.FIELDS))


# -------------------
# Validity criteria
# -------------------
class ValidityCriterion(_Node):
    """
    Predicate over the observation store and the query time deciding
    whether a ranked chain branch applies.

    Criteria never evaluate densities: the ``store`` they receive only has
    to expose ``instants(datum)``, the sorted observation instants of a
    datum.
    """
    #: datum the criterion looks at
    datum = None

    def holds(self, store, t, kb=None):
        """
        :param store: observation store
        :param t: :class:`naive.api.timebase.TimeSpec` of the query
        :param kb: knowledge base resolving constant radii
        """
        raise NotImplementedError()

    def references(self):
        return {self.datum}


class Within(ValidityCriterion):
    """
    At least one observation of ``datum`` within ``radius`` of the query
    instant. The radius is a duration or the name of a constant (see
    :func:`radius_of`).
    """
    FIELDS = ('datum', 'radius')

    def __init__(self, datum, radius):
        self.datum = datum
        self.radius = radius

    def holds(self, store, t, kb=None):
        radius = self.radius if kb is None else radius_of(kb, self.radius)
        return count_within(store.instants(self.datum), t.reference,
                            radius) > 0

    def references(self):
        names = {self.datum}
        if isinstance(self.radius, str):
            names.add(self.radius)
        return names


class MinPoints(ValidityCriterion):
    """
    At least ``count`` observations of ``datum`` within ``window`` of the
    query instant.
    """
    FIELDS = ('datum', 'count', 'window')

    def __init__(self, datum, count, window):
        self.datum = datum
        self.count = count
        self.window = window

    def holds(self, store, t, kb=None):
        return count_within(store.instants(self.datum), t.reference,
                            self.window) >= self.count


def count_within(instants, t, radius):
    """
    Number of points of the sorted list ``instants`` within ``radius`` of
    ``t``.
    """
    low = bisect.bisect_left(instants, t - radius)
    high = bisect.bisect_right(instants, t + radius)
    return high - low


# -------------------
# Procedures
# -------------------
class Procedure(_Node):
    """
    Base class of the evaluation recipes of inferences.

    A procedure only holds names: the engine resolves them in the knowledge
    base at evaluation time.
    """
    #: Procedure name in the definition language
    KEYWORD = None
    #: True when the procedure evaluates at an instant only
    INSTANT_ONLY = False
    #: Name of the alternate variable (procedures with a validity test)
    fallback = None

    def references(self):
        """ Names of every variable the procedure reads """
        raise NotImplementedError()

    def children(self):
        """ Nested procedures (ranked chains) """
        return []


class Ref(Procedure):
    """ The value of another variable. """
    KEYWORD = 'ref'
    FIELDS = ('target', )

    def __init__(self, target):
        self.target = target

    def references(self):
        return {self.target}


class Arith(Procedure):
    """
    Arithmetic combination of two independent cardinal variables.
    """
    KEYWORD = 'arith'
    FIELDS = ('op', 'left', 'right')

    def __init__(self, op, left, right):
        if op not in OPERATORS:
            raise KnowledgeBaseError('unknown operator: %r' % (op, ))
        self.op = op
        self.left = left
        self.right = right

    def references(self):
        return {self.left, self.right}


class Threshold(Procedure):
    """
    Maps a cardinal variable onto labels according to the interval its value
    falls in.
    """
    KEYWORD = 'threshold'
    FIELDS = ('source', 'partition')

    def __init__(self, source, partition):
        self.source = source
        #: tuple of (label, EventSet)
        self.partition = tuple(
            (label, es if isinstance(es, EventSet) else
             EventSet.of_intervals(es)) for label, es in partition)

    def references(self):
        return {self.source}


class NearestObs(Procedure):
    """
    The observation of ``datum`` nearest to the query instant, provided it
    lies within ``radius``; otherwise the value of ``fallback``.

    ``radius`` is a :class:`datetime.timedelta` or the name of a constant
    whose density is a Dirac delta over a range with a time unit.
    """
    KEYWORD = 'nearest_obs'
    INSTANT_ONLY = True
    FIELDS = ('datum', 'radius', 'fallback')

    def __init__(self, datum, radius, fallback=None):
        self.datum = datum
        self.radius = radius
        self.fallback = fallback

    def references(self):
        names = {self.datum}
        if isinstance(self.radius, str):
            names.add(self.radius)
        if self.fallback:
            names.add(self.fallback)
        return names


class LinearFit(Procedure):
    """
    Least squares line through the ``n`` observations of ``datum`` nearest to
    the query instant (within ``window``); needs ``min_points`` of them,
    otherwise the value of ``fallback``.
    """
    KEYWORD = 'linear_fit'
    INSTANT_ONLY = True
    FIELDS = ('datum', 'n', 'window', 'min_points', 'fallback')

    def __init__(self, datum, n=10, window=datetime.timedelta(days=30),
                 min_points=3, fallback=None):
        self.datum = datum
        self.n = n
        self.window = window
        self.min_points = min_points
        self.fallback = fallback

    def references(self):
        names = {self.datum}
        if self.fallback:
            names.add(self.fallback)
        return names


class CausalBalance(Procedure):
    """
    Balance model: ``base + rate * elapsed * (inflow - outflow)`` where the
    base is the latest observation of a datum and the elapsed time is
    measured from that observation in ``rate_unit``.
    """
    KEYWORD = 'causal_balance'
    INSTANT_ONLY = True
    FIELDS = ('base', 'inflow', 'outflow', 'rate', 'rate_unit', 'fallback')

    def __init__(self, base, inflow, outflow, rate=1.0,
                 rate_unit=datetime.timedelta(days=1), fallback=None):
        self.base = base
        self.inflow = inflow
        self.outflow = outflow
        self.rate = float(rate)
        self.rate_unit = rate_unit
        self.fallback = fallback

    def references(self):
        names = {self.base, self.inflow, self.outflow}
        if self.fallback:
            names.add(self.fallback)
        return names


class RankedChain(Procedure):
    """
    Ordered list of (procedure, criterion) branches: the first branch whose
    criterion holds is evaluated. The last branch has no criterion.
    """
    KEYWORD = 'chain'
    FIELDS = ('branches', )

    def __init__(self, branches):
        #: tuple of (Procedure, ValidityCriterion or None)
        self.branches = tuple(tuple(b) for b in branches)

    def references(self):
        names = set()
        for procedure, criterion in self.branches:
            names |= procedure.references()
            if criterion is not None:
                names |= criterion.references()
        return names

    def children(self):
        return [p for p, _ in self.branches]


class BayesFusion(Procedure):
    """
    Bayes combination of conditionally independent sources.
    """
    KEYWORD = 'fuse'
    FIELDS = ('sources', )

    def __init__(self, sources):
        self.sources = tuple(sources)

    def references(self):
        return set(self.sources)


class Trend(Procedure):
    """
    Ordinal trend of a cardinal variable around the query instant, from its
    values at ``t - epsilon`` and ``t + epsilon``; changes no larger than
    ``band`` are stable.
    """
    KEYWORD = 'trend'
    INSTANT_ONLY = True
    FIELDS = ('source', 'epsilon', 'band')

    def __init__(self, source, epsilon, band=0.0):
        self.source = source
        self.epsilon = epsilon
        self.band = float(band)

    def references(self):
        return {self.source}


# -------------------
# Variables
# -------------------
class VariableDef(object):
    """
    A node of the knowledge base graph.
    """
    DATUM = 'datum'
    INFERENCE = 'inference'
    CONSTANT = 'constant'
    KINDS = (DATUM, INFERENCE, CONSTANT)

    def __init__(self, name, kind, range_, procedure=None, density=None,
                 time_shapes=None):
        """
        :param name: identifier, unique in a knowledge base
        :param kind: one of :attr:`KINDS`
        :param range_: :class:`naive.api.density.Range`
        :param procedure: :class:`Procedure` (inferences only)
        :param density: time invariant density (constants only)
        :param time_shapes: accepted time shapes, default is all of them
        """
        if kind not in self.KINDS:
            raise KnowledgeBaseError('unknown variable kind: %r' % (kind, ))
        self.name = name
        self.kind = kind
        self.range = range_
        self.procedure = procedure
        self.density = density
        if time_shapes is None:
            time_shapes = TimeSpec.SHAPES
        self.time_shapes = tuple(s for s in TimeSpec.SHAPES
                                 if s in set(time_shapes))

    @property
    def is_datum(self):
        return self.kind == self.DATUM

    @property
    def is_inference(self):
        return self.kind == self.INFERENCE

    @property
    def is_constant(self):
        return self.kind == self.CONSTANT

    def accepts(self, shape):
        return shape in self.time_shapes

    def references(self):
        if self.procedure is None:
            return set()
        return self.procedure.references()

    def __eq__(self, other):
        return (isinstance(other, VariableDef) and
                (self.name, self.kind, self.range, self.procedure,
                 self.time_shapes) ==
                (other.name, other.kind, other.range, other.procedure,
                 other.time_shapes) and
                (self.density is None) == (other.density is None) and
                (self.density is None or self.density == other.density))

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'VariableDef(%r, %r)' % (self.name, self.kind)


class KnowledgeBase(object):
    """
    The knowledge base: named ranges and variables, in declaration order.

    ::

        kb = KnowledgeBase()
        weight = kb.add_range('Weight', Range.cardinal(1, 300, unit='kg'))
        kb.datum('ReportedWeight', weight)
        kb.constant('UnknownWeight', weight, make_uniform(1, 300, weight))
        kb.inference('CurrentWeight', weight, NearestObs(
            'ReportedWeight', timedelta(hours=12), fallback='UnknownWeight'))

    A knowledge base is treated as immutable once validated.
    """
    def __init__(self, variables=(), ranges=None):
        self.variables = collections.OrderedDict()
        self.ranges = collections.OrderedDict(ranges or ())
        #: declaration spans (name -> SourceSpan), filled by the parser
        self.spans = {}
        for variable in variables:
            self.add(variable)

    def add_range(self, name, range_):
        """ Declares a named range and returns it """
        if name in self.ranges:
            raise KnowledgeBaseError('range %s declared twice' % name)
        range_.name = name
        self.ranges[name] = range_
        return range_

    def add(self, variable):
        """ Adds a variable definition and returns it """
        if variable.name in self.variables:
            raise KnowledgeBaseError('variable %s declared twice' %
                                     variable.name)
        self.variables[variable.name] = variable
        return variable

    def datum(self, name, range_, time_shapes=None):
        return self.add(VariableDef(name, VariableDef.DATUM, range_,
                                    time_shapes=time_shapes))

    def constant(self, name, range_, density, time_shapes=None):
        return self.add(VariableDef(name, VariableDef.CONSTANT, range_,
                                    density=density, time_shapes=time_shapes))

    def inference(self, name, range_, procedure, time_shapes=None):
        return self.add(VariableDef(name, VariableDef.INFERENCE, range_,
                                    procedure=procedure,
                                    time_shapes=time_shapes))

    def get(self, name):
        """
        :raises: UnknownVariableError
        """
        try:
            return self.variables[name]
        except KeyError:
            raise UnknownVariableError(name)

    __getitem__ = get

    def __contains__(self, name):
        return name in self.variables

    def __iter__(self):
        return iter(self.variables.values())

    def __len__(self):
        return len(self.variables)

    def names(self):
        return list(self.variables.keys())

    def edges(self):
        """
        Returns the arcs ``(u, v)`` of the graph: ``v``'s procedure reads
        ``u``. Arcs to undeclared names are included.
        """
        arcs = []
        for variable in self:
            for name in sorted(variable.references()):
                arcs.append((name, variable.name))
        return arcs

    def _adjacency(self, forward):
        graph = collections.defaultdict(set)
        for u, v in self.edges():
            if forward:
                graph[u].add(v)
            else:
                graph[v].add(u)
        return graph

    def _closure(self, name, forward):
        self.get(name)
        graph = self._adjacency(forward)
        seen = set()
        todo = [name]
        while todo:
            for nxt in graph.get(todo.pop(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return seen

    def dependencies(self, name):
        """
        Every variable the evaluation of ``name`` may read, transitively.

        :raises: UnknownVariableError
        """
        return self._closure(name, forward=False)

    def dependents(self, name):
        """
        Every variable whose value may change when ``name`` changes,
        transitively (forward chaining).

        :raises: UnknownVariableError
        """
        return self._closure(name, forward=True)

    def cycles(self):
        """
        Returns the list of dependency cycles (each one as a list of names).
        """
        graph = self._adjacency(forward=False)
        white, grey, black = 0, 1, 2
        color = dict((name, white) for name in self.variables)
        found = []

        def visit(start):
            stack = [(start, iter(sorted(graph.get(start, ()))))]
            path = [start]
            color[start] = grey
            while stack:
                node, children = stack[-1]
                for child in children:
                    if color.get(child) == grey:
                        found.append(path[path.index(child):] + [child])
                    elif color.get(child) == white:
                        color[child] = grey
                        path.append(child)
                        stack.append((child, iter(sorted(
                            graph.get(child, ())))))
                        break
                else:
                    color[node] = black
                    path.pop()
                    stack.pop()

        for name in self.variables:
            if color[name] == white:
                visit(name)
        return found

    def topological_order(self):
        """
        Variables sorted so that every variable comes after the variables it
        reads.

        :raises: KnowledgeBaseError on cycles
        """
        if self.cycles():
            raise KnowledgeBaseError('the knowledge base has cycles')
        graph = self._adjacency(forward=False)
        order = []
        done = set()

        def visit(name):
            if name in done or name not in self.variables:
                return
            done.add(name)
            for child in sorted(graph.get(name, ())):
                visit(child)
            order.append(name)

        for name in self.variables:
            visit(name)
        return order

    def __eq__(self, other):
        return (isinstance(other, KnowledgeBase) and
                list(self.variables.items()) ==
                list(other.variables.items()) and
                list(self.ranges.items()) == list(other.ranges.items()))

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'KnowledgeBase(%d variables)' % len(self.variables)


def dependencies(kb, name):
    """ See :meth:`KnowledgeBase.dependencies` """
    return kb.dependencies(name)


def dependents(kb, name):
    """ See :meth:`KnowledgeBase.dependents` """
    return kb.dependents(name)


def radius_of(kb, radius):
    """
    Resolves a radius: durations are returned as is, constant names are
    turned into a duration from their Dirac density and range unit.

    :raises: KnowledgeBaseError when the constant cannot be a radius
    """
    if isinstance(radius, datetime.timedelta):
        return radius
    variable = kb.get(radius)
    density = variable.density
    if (not variable.is_constant or density is None or
            not density.is_delta or variable.range.unit not in TIME_UNITS):
        raise KnowledgeBaseError(
            '%s must be a constant Dirac density over a time range '
            '(unit s, m, h or d)' % radius)
    value = density.atoms[0][0] * TIME_UNITS[variable.range.unit]
    if value < 0:
        raise KnowledgeBaseError('radius %s is negative' % radius)
    return datetime.timedelta(seconds=value)


# -------------------
# Validation
# -------------------
class _Validator(object):
    """
    Collects the diagnostics of a knowledge base.
    """
    def __init__(self, kb):
        self.kb = kb
        self.diagnostics = []

    def report(self, code, message, variable):
        self.diagnostics.append(diagnostics.error(code, message,
                                                  variable=variable))

    def lookup(self, name, owner):
        if name not in self.kb:
            self.report(Codes.UNDEFINED, '%s reads undeclared variable %s' %
                        (owner.name, name), owner.name)
            return None
        return self.kb[name]

    def same_range(self, name, owner, what):
        other = self.lookup(name, owner)
        if other is not None and other.range != owner.range:
            self.report(Codes.RANGE_MISMATCH,
                        '%s %s has range %r, expected %r' % (
                            what, name, other.range, owner.range),
                        owner.name)
        return other

    def cardinal(self, name, owner, what):
        other = self.lookup(name, owner)
        if other is not None and not other.range.is_cardinal:
            self.report(Codes.KIND, '%s %s of %s must be cardinal' % (
                what, name, owner.name), owner.name)
        return other

    def datum(self, name, owner, what):
        other = self.lookup(name, owner)
        if other is not None and not other.is_datum:
            self.report(Codes.NOT_DATUM, '%s %s of %s must be a datum' % (
                what, name, owner.name), owner.name)
        return other

    def positive(self, value, owner, what, strict=True):
        zero = datetime.timedelta(0) if isinstance(
            value, datetime.timedelta) else 0
        if value < zero or (strict and value == zero):
            self.report(Codes.PARAMETER, '%s of %s must be %s' % (
                what, owner.name, 'positive' if strict else 'non negative'),
                owner.name)

    def fallback(self, procedure, owner):
        if procedure.fallback:
            self.same_range(procedure.fallback, owner, 'fallback')

    def run(self):
        for variable in self.kb:
            self.check_variable(variable)
        for cycle in self.kb.cycles():
            self.report(Codes.CYCLE, 'dependency cycle: %s' % ' -> '.join(
                reversed(cycle)), cycle[0])
        return self.diagnostics

    def check_variable(self, variable):
        name = variable.name
        if variable.is_datum and (variable.procedure or variable.density):
            self.report(Codes.DEFINITION, 'datum %s has externally '
                        'determined values only' % name, name)
        if variable.is_constant:
            if variable.density is None or variable.procedure is not None:
                self.report(Codes.DEFINITION, 'constant %s needs a density '
                            'and no procedure' % name, name)
            elif variable.density.range != variable.range:
                self.report(Codes.RANGE_MISMATCH, 'constant %s density is '
                            'not over its range' % name, name)
        if variable.is_inference:
            if variable.procedure is None or variable.density is not None:
                self.report(Codes.DEFINITION, 'inference %s needs exactly '
                            'one procedure' % name, name)
            else:
                self.check_procedure(variable.procedure, variable)

    def check_procedure(self, procedure, owner):
        if (procedure.INSTANT_ONLY and
                not owner.accepts(TimeSpec.INSTANT)):
            self.report(Codes.TIME_SHAPE, '%s of %s needs instants' % (
                procedure.KEYWORD, owner.name), owner.name)
        method = getattr(self, 'check_' + type(procedure).__name__.lower())
        method(procedure, owner)

    def check_ref(self, procedure, owner):
        self.same_range(procedure.target, owner, 'variable')

    def check_arith(self, procedure, owner):
        if not owner.range.is_cardinal:
            self.report(Codes.KIND, 'arithmetic result %s must be cardinal' %
                        owner.name, owner.name)
        self.cardinal(procedure.left, owner, 'operand')
        self.cardinal(procedure.right, owner, 'operand')

    def check_threshold(self, procedure, owner):
        if not owner.range.is_discrete:
            self.report(Codes.KIND, 'threshold result %s must be ordinal or '
                        'categorical' % owner.name, owner.name)
        source = self.cardinal(procedure.source, owner, 'source')
        for label, _ in procedure.partition:
            if owner.range.is_discrete and label not in owner.range.labels:
                self.report(Codes.LABEL, '%s is not a label of %s' % (
                    label, owner.name), owner.name)
        if source is not None and source.range.is_cardinal:
            for defect in partition_defects(procedure.partition,
                                            source.range):
                self.report(Codes.COVERAGE, 'threshold of %s: %s' % (
                    owner.name, defect), owner.name)

    def check_nearestobs(self, procedure, owner):
        self.datum(procedure.datum, owner, 'observed variable')
        self.same_range(procedure.datum, owner, 'datum')
        self.radius(procedure.radius, owner)
        self.fallback(procedure, owner)

    def check_linearfit(self, procedure, owner):
        self.datum(procedure.datum, owner, 'observed variable')
        self.cardinal(procedure.datum, owner, 'observed variable')
        self.same_range(procedure.datum, owner, 'datum')
        self.positive(procedure.n, owner, 'n')
        self.positive(procedure.window, owner, 'window')
        if procedure.min_points < 2 or procedure.min_points > procedure.n:
            self.report(Codes.PARAMETER, 'min_points of %s must be between '
                        '2 and n' % owner.name, owner.name)
        self.fallback(procedure, owner)

    def check_causalbalance(self, procedure, owner):
        if not owner.range.is_cardinal:
            self.report(Codes.KIND, 'causal model %s must be cardinal' %
                        owner.name, owner.name)
        self.datum(procedure.base, owner, 'base')
        self.same_range(procedure.base, owner, 'base')
        self.cardinal(procedure.inflow, owner, 'inflow')
        self.cardinal(procedure.outflow, owner, 'outflow')
        if not math.isfinite(procedure.rate):
            self.report(Codes.PARAMETER, 'rate of %s must be finite' %
                        owner.name, owner.name)
        self.positive(procedure.rate_unit, owner, 'rate unit')
        self.fallback(procedure, owner)

    def check_rankedchain(self, procedure, owner):
        if not procedure.branches:
            self.report(Codes.DEFINITION, 'empty chain in %s' % owner.name,
                        owner.name)
            return
        for index, (branch, criterion) in enumerate(procedure.branches):
            last = index == len(procedure.branches) - 1
            if last != (criterion is None):
                self.report(Codes.DEFINITION, 'branch (%d) of %s: only the '
                            'last branch is unconditional' % (
                                index + 1, owner.name), owner.name)
            if criterion is not None:
                self.check_criterion(criterion, owner)
            self.check_procedure(branch, owner)

    def check_criterion(self, criterion, owner):
        self.datum(criterion.datum, owner, 'criterion variable')
        if isinstance(criterion, Within):
            self.radius(criterion.radius, owner)
            return
        if criterion.count < 1:
            self.report(Codes.PARAMETER, 'count of %s must be at least 1' %
                        owner.name, owner.name)
        self.positive(criterion.window, owner, 'window', strict=False)

    def radius(self, radius, owner):
        if not isinstance(radius, str):
            self.positive(radius, owner, 'radius', strict=False)
        elif self.lookup(radius, owner) is not None:
            try:
                radius_of(self.kb, radius)
            except KnowledgeBaseError as e:
                self.report(Codes.PARAMETER, str(e), owner.name)

    def check_bayesfusion(self, procedure, owner):
        if len(procedure.sources) < 2:
            self.report(Codes.DEFINITION, 'fusion in %s needs at least two '
                        'sources' % owner.name, owner.name)
        for source in procedure.sources:
            self.same_range(source, owner, 'source')

    def check_trend(self, procedure, owner):
        if (owner.range.kind != owner.range.ORDINAL or
                owner.range.labels != TREND_LABELS):
            self.report(Codes.TREND_RANGE, 'trend %s must be ordinal over '
                        '{%s}' % (owner.name, ' < '.join(TREND_LABELS)),
                        owner.name)
        self.cardinal(procedure.source, owner, 'source')
        self.positive(procedure.epsilon, owner, 'epsilon')
        self.positive(procedure.band, owner, 'band', strict=False)


def validate(kb):
    """
    Checks a knowledge base.

    :returns: list of :class:`naive.api.diagnostics.Diagnostic`, empty iff
        the knowledge base is reference-closed, acyclic and has consistent
        ranges.
    """
    found = _Validator(kb).run()
    _logger().debug('validated %r: %d diagnostic(s)', kb, len(found))
    return found


def interval_partition(*items):
    """
    Shortcut to build a threshold partition::

        interval_partition(('hypo', 60, 70, True, False),
                           ('normo', 70, 120),
                           ('hyper', 120, 140, False, True))
    """
    return tuple((item[0], EventSet.of_intervals([Interval(*item[1:])]))
                 for item in items)
