# -*- coding: utf-8 -*-
"""
This module turns a knowledge base back into definition language text.

The output is canonical: ranges first, then variables, both in declaration
order, one declaration per line, every procedure parameter written out.
Serializing the result of parsing a canonical text gives the same text.
"""
from naive.api.density import format_number
from naive.api.errors import KnowledgeBaseError
from naive.api.kb import (
    Arith, BayesFusion, CausalBalance, LinearFit, MinPoints, NearestObs,
    RankedChain, Ref, Threshold, Trend, Within)
from naive.api.timebase import TimeSpec, format_duration


def range_text(range_):
    if range_.is_cardinal:
        text = 'cardinal %s..%s' % (format_number(range_.lower),
                                    format_number(range_.upper))
        if range_.unit:
            text += ' unit "%s"' % range_.unit
        return text
    separator = ' < ' if range_.kind == range_.ORDINAL else ', '
    return '%s {%s}' % (range_.kind, separator.join(range_.labels))


def _range_ref(kb, range_):
    declared = kb.ranges.get(range_.name) if range_.name else None
    if declared is not None and declared == range_:
        return range_.name
    return range_text(range_)


def density_text(density):
    """
    :raises: KnowledgeBaseError for densities other than uniform, Dirac and
        pmf ones.
    """
    if density.is_discrete:
        return 'pmf{%s}' % ', '.join('%s: %s' % (label, format_number(p))
                                     for label, p in density.discrete)
    if density.is_delta:
        return 'delta(%s)' % format_number(density.atoms[0][0])
    pieces = density.pieces
    if not density.atoms and len(pieces) == 1:
        return 'uniform(%s, %s)' % (format_number(pieces[0][0]),
                                    format_number(pieces[0][1]))
    raise KnowledgeBaseError('only uniform, delta and pmf constants can be '
                             'written, got %r' % density)


def _duration(duration):
    return format_duration(duration)


def _rate(rate, unit):
    unit = format_duration(unit)
    if unit[:-1] == '1':
        unit = unit[-1]
    return '%s/%s' % (format_number(rate), unit)


def _fallback(procedure):
    if procedure.fallback:
        return ', else=%s' % procedure.fallback
    return ''


def _radius(radius):
    if isinstance(radius, str):
        return radius
    return _duration(radius)


def criterion_text(criterion):
    if isinstance(criterion, Within):
        return 'within(%s, %s)' % (criterion.datum, _radius(criterion.radius))
    assert isinstance(criterion, MinPoints)
    return 'count(%s, %d, %s)' % (criterion.datum, criterion.count,
                                  _duration(criterion.window))


def procedure_text(procedure):
    if isinstance(procedure, Ref):
        return procedure.target
    if isinstance(procedure, Arith):
        return '%s(%s, %s)' % (procedure.op, procedure.left, procedure.right)
    if isinstance(procedure, Threshold):
        return 'threshold(%s) {%s}' % (procedure.source, ', '.join(
            '%s: %s' % (label, ' | '.join(str(i) for i in es.intervals))
            for label, es in procedure.partition))
    if isinstance(procedure, NearestObs):
        return 'nearest_obs(%s, radius=%s%s)' % (
            procedure.datum, _radius(procedure.radius), _fallback(procedure))
    if isinstance(procedure, LinearFit):
        return 'linear_fit(%s, n=%d, window=%s, min_points=%d%s)' % (
            procedure.datum, procedure.n, _duration(procedure.window),
            procedure.min_points, _fallback(procedure))
    if isinstance(procedure, CausalBalance):
        return 'causal_balance(base=%s, in=%s, out=%s, rate=%s%s)' % (
            procedure.base, procedure.inflow, procedure.outflow,
            _rate(procedure.rate, procedure.rate_unit),
            _fallback(procedure))
    if isinstance(procedure, RankedChain):
        branches = []
        for branch, criterion in procedure.branches:
            if criterion is None:
                branches.append(procedure_text(branch))
            else:
                branches.append('(%s if %s)' % (procedure_text(branch),
                                                criterion_text(criterion)))
        return 'chain[%s]' % ', '.join(branches)
    if isinstance(procedure, BayesFusion):
        return 'fuse(%s)' % ', '.join(procedure.sources)
    if isinstance(procedure, Trend):
        return 'trend(%s, epsilon=%s, band=%s)' % (
            procedure.source, _duration(procedure.epsilon),
            format_number(procedure.band))
    raise KnowledgeBaseError('cannot write procedure %r' % (procedure, ))


def variable_text(kb, variable):
    head = '%s : %s' % (variable.name, _range_ref(kb, variable.range))
    if variable.time_shapes != TimeSpec.SHAPES:
        head += ' @ %s' % ', '.join(variable.time_shapes)
    if variable.is_datum:
        return 'datum %s' % head
    if variable.is_constant:
        return 'const %s = %s' % (head, density_text(variable.density))
    return 'infer %s = %s' % (head, procedure_text(variable.procedure))


def serialize(kb):
    """
    Writes a knowledge base as definition language text.

    :raises: KnowledgeBaseError for constructs the language cannot express.
    """
    lines = ['range %s = %s' % (name, range_text(r))
             for name, r in kb.ranges.items()]
    if lines and len(kb):
        lines.append('')
    lines.extend(variable_text(kb, v) for v in kb)
    if not lines:
        return ''
    return '\n'.join(lines) + '\n'
