# -*- coding: utf-8 -*-
"""
This module contains the parser of the knowledge base definition language.

The parser only reports lexical and syntactic defects (``E1xx`` codes);
semantic checks are the job of :func:`naive.api.kb.validate`. Both kinds of
diagnostics can be obtained in a single pass with :func:`naive.dsl.check`.
"""
import bisect
import datetime
import logging
import math

from pygments.token import Error, Keyword, Name, Number, String

from naive.api import diagnostics
from naive.api.density import (
    Density, EventSet, Interval, Range, make_delta, make_pmf, make_uniform)
from naive.api.diagnostics import Codes, SourceSpan
from naive.api.errors import DensityError, RangeError
from naive.api.kb import (
    Arith, BayesFusion, CausalBalance, KnowledgeBase, LinearFit, MinPoints,
    NearestObs, RankedChain, Ref, Threshold, Trend, VariableDef, Within)
from naive.api.timebase import TimeSpec, parse_duration
from naive.dsl.lexer import Duration, Rate, tokenize


def _logger():
    """ Returns module's logger """
    return logging.getLogger(__name__)


DECLARATIONS = ('range', 'datum', 'const', 'infer')

ARITH = ('add', 'sub', 'mul', 'div')

PROCEDURES = ARITH + ('threshold', 'nearest_obs', 'linear_fit',
                      'causal_balance', 'chain', 'fuse', 'trend')


class _Abort(Exception):
    """ Stops the current declaration, the diagnostic is already recorded """


class Parser(object):
    """
    Recursive descent parser over the tokens of :class:`NkbLexer`.
    """
    def __init__(self, text, file=None):
        self.text = text
        self.file = file
        self.diagnostics = []
        self.kb = KnowledgeBase()
        self._lines = [0] + [i + 1 for i, c in enumerate(text) if c == '\n']
        self.tokens = []
        for token in tokenize(text):
            if token[1] in Error:
                self.report(Codes.BAD_CHARACTER, 'unexpected character %r' %
                            token[2], token)
            else:
                self.tokens.append(token)
        self.index = 0

    # -------------------
    # Token helpers
    # -------------------
    def span(self, token):
        if token is None:
            pos, length = len(self.text), 0
        else:
            pos, length = token[0], len(token[2])
        line = bisect.bisect_right(self._lines, pos)
        column = pos - self._lines[line - 1] + 1
        return SourceSpan(line, column, column + length, self.file)

    def report(self, code, message, token=None):
        self.diagnostics.append(diagnostics.error(code, message,
                                                  self.span(token)))

    def fail(self, code, message, token=None):
        self.report(code, message, token)
        raise _Abort()

    def peek(self, offset=0):
        index = self.index + offset
        if index < len(self.tokens):
            return self.tokens[index]
        return None

    def next(self, what):
        token = self.peek()
        if token is None:
            self.fail(Codes.UNEXPECTED_EOF, 'unexpected end of file, '
                      'expected %s' % what)
        self.index += 1
        return token

    def at(self, value):
        token = self.peek()
        return token is not None and token[2] == value and \
            token[1] not in String

    def expect(self, value):
        token = self.next(repr(value))
        if token[2] != value or token[1] in String:
            self.fail(Codes.UNEXPECTED_TOKEN, 'expected %r, got %r' % (
                value, token[2]), token)
        return token

    def expect_type(self, ttype, what):
        token = self.next(what)
        if token[1] not in ttype:
            self.fail(Codes.UNEXPECTED_TOKEN, 'expected %s, got %r' % (
                what, token[2]), token)
        return token

    def name(self, what='a name'):
        return self.expect_type(Name, what)[2]

    def number(self):
        token = self.expect_type(Number, 'a number')
        value = float(token[2])
        if not math.isfinite(value):
            self.fail(Codes.BAD_LITERAL, 'number out of bounds: %s' %
                      token[2], token)
        return value

    def integer(self):
        token = self.expect_type(Number, 'an integer')
        if not token[2].lstrip('-').isdigit():
            self.fail(Codes.BAD_LITERAL, 'expected an integer, got %s' %
                      token[2], token)
        return int(token[2])

    def duration(self):
        token = self.expect_type(Duration, 'a duration (e.g. 12h)')
        return parse_duration(token[2])

    def rate(self):
        token = self.expect_type(Rate, 'a rate (e.g. 1.0/d)')
        value, unit = token[2].split('/')
        if not unit[:-1]:
            unit = '1' + unit
        rate, unit = float(value), parse_duration(unit)
        if not math.isfinite(rate) or unit <= datetime.timedelta(0):
            self.fail(Codes.BAD_LITERAL, 'invalid rate %s' % token[2], token)
        return rate, unit

    # -------------------
    # Declarations
    # -------------------
    def parse(self):
        while self.peek() is not None:
            token = self.peek()
            try:
                if token[1] in Keyword and token[2] in DECLARATIONS:
                    getattr(self, 'parse_' + token[2])()
                else:
                    self.fail(Codes.UNEXPECTED_TOKEN, 'expected a '
                              'declaration (%s), got %r' % (
                                  ', '.join(DECLARATIONS), token[2]), token)
            except _Abort:
                self.recover()
        _logger().debug('parsed %s: %d variables, %d diagnostics',
                        self.file or '<text>', len(self.kb),
                        len(self.diagnostics))
        return self.kb, self.diagnostics

    def recover(self):
        """ Skips tokens up to the next declaration """
        while self.peek() is not None:
            token = self.peek()
            if token[1] in Keyword and token[2] in DECLARATIONS:
                break
            self.index += 1

    def declared_name(self):
        token = self.expect_type(Name, 'a name')
        name = token[2]
        if name in self.kb or name in self.kb.ranges:
            self.fail(Codes.DUPLICATE_NAME, '%s is already declared' % name,
                      token)
        return name, token

    def parse_range(self):
        self.next('range')
        name, _ = self.declared_name()
        self.expect('=')
        range_ = self.range_expr()
        self.kb.add_range(name, range_)

    def variable_head(self):
        keyword = self.next('a declaration')
        name, token = self.declared_name()
        self.expect(':')
        range_ = self.range_ref()
        shapes = None
        if self.at('@'):
            shapes = self.time_shapes()
        return name, token, range_, shapes, keyword

    def register(self, variable, token):
        self.kb.add(variable)
        self.kb.spans[variable.name] = self.span(token)

    def parse_datum(self):
        name, token, range_, shapes, _ = self.variable_head()
        self.register(VariableDef(name, VariableDef.DATUM, range_,
                                  time_shapes=shapes), token)

    def parse_const(self):
        name, token, range_, shapes, _ = self.variable_head()
        self.expect('=')
        density = self.density_expr(range_)
        self.register(VariableDef(name, VariableDef.CONSTANT, range_,
                                  density=density, time_shapes=shapes),
                      token)

    def parse_infer(self):
        name, token, range_, shapes, _ = self.variable_head()
        self.expect('=')
        procedure = self.procedure()
        self.register(VariableDef(name, VariableDef.INFERENCE, range_,
                                  procedure=procedure, time_shapes=shapes),
                      token)

    def time_shapes(self):
        self.expect('@')
        shapes = []
        while True:
            token = self.expect_type(Name, 'a time shape')
            if token[2] not in TimeSpec.SHAPES:
                self.fail(Codes.UNKNOWN_FORM, 'unknown time shape %r (expected'
                          ' %s)' % (token[2], ', '.join(TimeSpec.SHAPES)),
                          token)
            shapes.append(token[2])
            if not self.at(','):
                return shapes
            self.next(',')

    # -------------------
    # Ranges and constants
    # -------------------
    def range_ref(self):
        token = self.peek()
        if token is not None and token[1] in Name:
            self.index += 1
            if token[2] not in self.kb.ranges:
                self.fail(Codes.UNKNOWN_RANGE, 'unknown range %s' % token[2],
                          token)
            return self.kb.ranges[token[2]]
        return self.range_expr()

    def range_expr(self):
        token = self.next('a range')
        kind = token[2] if token[1] in Keyword else None
        try:
            if kind == Range.CARDINAL:
                lower = self.number()
                self.expect('..')
                upper = self.number()
                unit = ''
                if self.at('unit'):
                    self.next('unit')
                    unit = self.expect_type(String, 'a unit string')[2][1:-1]
                return Range.cardinal(lower, upper, unit=unit)
            if kind in (Range.ORDINAL, Range.CATEGORICAL):
                separator = '<' if kind == Range.ORDINAL else ','
                self.expect('{')
                labels = [self.name('a label')]
                while not self.at('}'):
                    self.expect(separator)
                    labels.append(self.name('a label'))
                self.next('}')
                return Range(kind, labels=labels)
        except RangeError as e:
            self.fail(Codes.BAD_RANGE, str(e), token)
        self.fail(Codes.UNEXPECTED_TOKEN, 'expected cardinal, ordinal or '
                  'categorical, got %r' % token[2], token)

    def density_expr(self, range_):
        token = self.expect_type(Name, 'uniform, delta or pmf')
        form = token[2]
        if form not in ('uniform', 'delta', 'pmf'):
            self.fail(Codes.UNKNOWN_FORM, 'unknown density %r (expected '
                      'uniform, delta or pmf)' % form, token)
        try:
            if form == 'pmf':
                self.expect('{')
                weights = []
                while True:
                    label = self.name('a label')
                    self.expect(':')
                    weights.append((label, self.number()))
                    if self.at('}'):
                        break
                    self.expect(',')
                self.next('}')
                return _pmf(weights, range_)
            self.expect('(')
            first = self.number()
            if form == 'delta':
                self.expect(')')
                return make_delta(first, range_)
            self.expect(',')
            second = self.number()
            self.expect(')')
            return make_uniform(first, second, range_)
        except (RangeError, DensityError) as e:
            self.fail(Codes.BAD_CONSTANT, str(e), token)

    # -------------------
    # Procedures
    # -------------------
    def procedure(self):
        token = self.expect_type(Name, 'a procedure or a name')
        following = self.peek()
        if following is None or following[2] not in ('(', '['):
            return Ref(token[2])
        keyword = token[2]
        if keyword not in PROCEDURES:
            self.fail(Codes.UNKNOWN_FORM, 'unknown procedure %r' % keyword,
                      token)
        if keyword in ARITH:
            return self.proc_arith(keyword, token)
        return getattr(self, 'proc_' + keyword)(keyword, token)

    def keyword_arguments(self, spec, token, leading=True):
        """
        Parses ``key=value`` arguments.

        :param spec: dict key -> (parser method, required)
        :param leading: whether the first argument is preceded by a comma
        """
        values = {}
        first = True
        while not self.at(')'):
            if leading or not first:
                self.expect(',')
            first = False
            key_token = self.expect_type(Name, 'an argument name')
            key = key_token[2]
            if key not in spec:
                self.fail(Codes.BAD_ARGUMENT, 'unknown argument %r (expected'
                          ' %s)' % (key, ', '.join(sorted(spec))), key_token)
            if key in values:
                self.fail(Codes.BAD_ARGUMENT, 'argument %r given twice' %
                          key, key_token)
            self.expect('=')
            values[key] = spec[key][0]()
        closing = self.next(')')
        for key, (_, required) in sorted(spec.items()):
            if required and key not in values:
                self.fail(Codes.BAD_ARGUMENT, 'missing argument %r in %s' % (
                    key, token[2]), closing)
        return values

    def radius(self):
        token = self.peek()
        if token is not None and token[1] in Name:
            return self.name()
        return self.duration()

    def proc_arith(self, keyword, token):
        self.expect('(')
        left = self.name()
        self.expect(',')
        right = self.name()
        self.expect(')')
        return Arith(keyword, left, right)

    def proc_threshold(self, keyword, token):
        self.expect('(')
        source = self.name()
        self.expect(')')
        self.expect('{')
        partition = []
        while True:
            label = self.name('a label')
            self.expect(':')
            intervals = [self.interval()]
            while self.at('|'):
                self.next('|')
                intervals.append(self.interval())
            try:
                partition.append((label, EventSet.of_intervals(intervals)))
            except RangeError as e:
                self.fail(Codes.BAD_RANGE, str(e), token)
            if self.at('}'):
                break
            self.expect(',')
        self.next('}')
        return Threshold(source, partition)

    def interval(self):
        opening = self.next('[ or (')
        if opening[2] not in ('[', '('):
            self.fail(Codes.UNEXPECTED_TOKEN, 'expected [ or (, got %r' %
                      opening[2], opening)
        lower = self.number()
        self.expect(',')
        upper = self.number()
        closing = self.next('] or )')
        if closing[2] not in (']', ')'):
            self.fail(Codes.UNEXPECTED_TOKEN, 'expected ] or ), got %r' %
                      closing[2], closing)
        try:
            return Interval(lower, upper, opening[2] == '[',
                            closing[2] == ']')
        except RangeError as e:
            self.fail(Codes.BAD_RANGE, str(e), opening)

    def proc_nearest_obs(self, keyword, token):
        self.expect('(')
        datum = self.name()
        args = self.keyword_arguments({'radius': (self.radius, True),
                                       'else': (self.name, False)}, token)
        return NearestObs(datum, args['radius'], args.get('else'))

    def proc_linear_fit(self, keyword, token):
        self.expect('(')
        datum = self.name()
        args = self.keyword_arguments({'n': (self.integer, False),
                                       'window': (self.duration, False),
                                       'min_points': (self.integer, False),
                                       'else': (self.name, False)}, token)
        procedure = LinearFit(datum, fallback=args.get('else'))
        procedure.n = args.get('n', procedure.n)
        procedure.window = args.get('window', procedure.window)
        procedure.min_points = args.get('min_points', procedure.min_points)
        return procedure

    def proc_causal_balance(self, keyword, token):
        self.expect('(')
        args = self.keyword_arguments({'base': (self.name, True),
                                       'in': (self.name, True),
                                       'out': (self.name, True),
                                       'rate': (self.rate, False),
                                       'else': (self.name, False)}, token,
                                      leading=False)
        procedure = CausalBalance(args['base'], args['in'], args['out'],
                                  fallback=args.get('else'))
        if 'rate' in args:
            procedure.rate, procedure.rate_unit = args['rate']
        return procedure

    def proc_chain(self, keyword, token):
        self.expect('[')
        branches = []
        while True:
            start = self.peek()
            if self.at('('):
                self.next('(')
                branch = self.procedure()
                self.expect('if')
                criterion = self.criterion()
                self.expect(')')
            else:
                branch, criterion = self.procedure(), None
            branches.append((branch, criterion, start))
            if self.at(']'):
                break
            self.expect(',')
        self.next(']')
        for index, (_, criterion, start) in enumerate(branches):
            last = index == len(branches) - 1
            if last and criterion is not None:
                self.fail(Codes.BAD_CHAIN, 'the last branch of a chain must '
                          'be unconditional', start)
            if not last and criterion is None:
                self.fail(Codes.BAD_CHAIN, 'only the last branch of a chain '
                          'can be unconditional', start)
        return RankedChain([(b, c) for b, c, _ in branches])

    def criterion(self):
        token = self.expect_type(Name, 'within or count')
        if token[2] == 'within':
            self.expect('(')
            datum = self.name()
            self.expect(',')
            radius = self.radius()
            self.expect(')')
            return Within(datum, radius)
        if token[2] == 'count':
            self.expect('(')
            datum = self.name()
            self.expect(',')
            count = self.integer()
            self.expect(',')
            window = self.duration()
            self.expect(')')
            return MinPoints(datum, count, window)
        self.fail(Codes.UNKNOWN_FORM, 'unknown criterion %r (expected within'
                  ' or count)' % token[2], token)

    def proc_fuse(self, keyword, token):
        self.expect('(')
        sources = [self.name()]
        while not self.at(')'):
            self.expect(',')
            sources.append(self.name())
        self.next(')')
        return BayesFusion(sources)

    def proc_trend(self, keyword, token):
        self.expect('(')
        source = self.name()
        args = self.keyword_arguments({'epsilon': (self.duration, True),
                                       'band': (self.number, False)}, token)
        return Trend(source, args['epsilon'], args.get('band', 0.0))


def _pmf(weights, range_):
    # weights that already sum to 1 are kept as written, so that a
    # serialized pmf reads back unchanged
    total = sum(w for _, w in weights)
    if abs(total - 1.0) <= 1e-9 and all(w >= 0 for _, w in weights):
        probs = {}
        for label, weight in weights:
            range_.index(label)
            probs[label] = probs.get(label, 0.0) + weight
        return Density(range_, pmf=probs, tolerance=1e-9)
    return make_pmf(weights, range_)


def parse(text, file=None):
    """
    Parses a knowledge base text.

    :param text: the ``.nkb`` text
    :param file: file name used in diagnostic spans
    :returns: (KnowledgeBase, list of Diagnostic). The knowledge base holds
        every declaration that could be parsed.
    """
    return Parser(text, file).parse()
