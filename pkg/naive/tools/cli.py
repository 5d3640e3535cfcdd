# -*- coding: utf-8 -*-
"""
The ``naive`` command line tool: loads a knowledge base, ingests timestamped
observations, evaluates variables, checks consistency and exports densities.

Usage:
    naive [--grid N] [--log-level LEVEL] <command> [options]

Commands:
    validate   parse and validate a knowledge base
    eval       evaluate a variable at an instant, an interval or a series
    check      report the observations contradicting a model
    trend      compute the trend of a cardinal variable at an instant
    session    run a script of interleaved observe/eval/explain/check lines

Example:

    $ naive eval weight.nkb obs.csv --var CurrentWeight --at Day1T10:00
    variable: CurrentWeight
    time: 2000-01-01T10:00:00+00:00
    mean: 70
    ...

Exit codes: 0 ok, 1 diagnostics, contradictions or evaluation errors,
2 usage, 3 I/O errors.
"""
import argparse
import csv
import datetime
import io
import json
import logging
import shlex
import sys

from naive import __version__, dsl
from naive.api import engine
from naive.api.context import EvalContext
from naive.api.errors import NaiveError, RecordError
from naive.api.kb import TREND_LABELS, Trend
from naive.api.timebase import TimeSpec, parse_duration
from naive.tools.records import decode_record, load_records


def _logger():
    """ Returns the module's logger """
    return logging.getLogger(__name__)


EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3

#: Quantiles printed in density summaries
QUANTILES = (0.05, 0.5, 0.95)


class UsageError(Exception):
    """ Raised for malformed options that argparse cannot detect """


# -------------------
# Output helpers
# -------------------
def _value(value):
    return '%.6g' % value


def summary_lines(density):
    """
    Returns the ``key: value`` lines summarizing a density.
    """
    if density.is_discrete:
        return ['%s: %s' % (label, _value(p)) for label, p in
                density.discrete]
    mean, variance = density.moments()
    lines = ['mean: %s' % _value(mean), 'variance: %s' % _value(variance)]
    for p in QUANTILES:
        lines.append('q%02d: %s' % (int(round(p * 100)),
                                    _value(density.quantile(p))))
    if density.clamped_mass > 0:
        lines.append('clamped: %s' % _value(density.clamped_mass))
    return lines


def write_density(out, name, t, density, fmt, grid=None):
    """
    Writes a density (or a tuple of densities for a series) to ``out``.

    :param fmt: ``summary``, ``csv`` or ``json``
    :param grid: :class:`GridPolicy` giving the points of a csv export
    """
    if t.is_series:
        pairs = list(zip((TimeSpec(TimeSpec.INSTANT, p) for p in t.value),
                         density))
    else:
        pairs = [(t, density)]
    if fmt == 'json':
        out.write(json.dumps([{'variable': name, 'time': str(time),
                               'density': d.to_dict()} for time, d in pairs],
                             sort_keys=True) + '\n')
        return
    if fmt == 'csv':
        resolution = grid.resolution if grid is not None else None
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(['time', 'x', 'pdf', 'cdf'])
        for time, d in pairs:
            for row in d.to_csv_rows(resolution):
                writer.writerow([str(time)] + [
                    v if isinstance(v, str) else repr(v) for v in row])
        return
    for time, d in pairs:
        out.write('variable: %s\ntime: %s\n' % (name, time))
        for line in summary_lines(d):
            out.write(line + '\n')


def _error(message):
    sys.stderr.write('naive: error: %s\n' % message)


# -------------------
# Loading
# -------------------
def load_kb(path):
    """
    Loads and validates a knowledge base, diagnostics go to standard error.

    :returns: the knowledge base or None when it has errors
    """
    with io.open(path, encoding='utf-8') as stream:
        text = stream.read()
    kb, found = dsl.check(text, path)
    for diagnostic in found:
        sys.stderr.write('%s\n' % diagnostic)
    if any(d.is_error for d in found):
        return None
    return kb


def make_context(args, kb):
    return EvalContext(kb, grid=args.grid,
                       cache=False if getattr(args, 'no_cache', False)
                       else None,
                       threshold=getattr(args, 'threshold', None))


def ingest(ctx, path):
    """ Reports every observation of an observation file """
    if not path:
        return []
    observations = load_records(path, ctx.kb)
    for observation in observations:
        engine.report_observation(ctx, observation)
    return observations


def parse_pair(text):
    datum, sep, model = text.partition('=')
    if not sep or not datum.strip() or not model.strip():
        raise UsageError('pairs are written datum=model, got %r' % text)
    return datum.strip(), model.strip()


def timespec_of(args):
    if args.at:
        return engine.as_timespec(args.at)
    if args.over:
        return engine.as_timespec(args.over)
    return engine.as_timespec(args.series)


# -------------------
# Commands
# -------------------
def cmd_validate(args, out):
    kb = load_kb(args.kb)
    if kb is None:
        return EXIT_FAILURE
    out.write('%s: %d variables, ok\n' % (args.kb, len(kb)))
    return EXIT_OK


def cmd_eval(args, out):
    kb = load_kb(args.kb)
    if kb is None:
        return EXIT_FAILURE
    ctx = make_context(args, kb)
    ingest(ctx, args.obs)
    t = timespec_of(args)
    trace = engine.explain(ctx, args.var, t) if args.explain else None
    # with the cache on, this reads back what the traced evaluation stored
    density = engine.evaluate(ctx, args.var, t)
    write_density(out, args.var, t, density, args.out, ctx.grid)
    if trace is not None:
        out.write(trace.render() + '\n')
    return EXIT_OK


def check_pairs(ctx, pairs, out, threshold=None):
    """
    Checks every observation of the paired data.

    :returns: number of contradictions
    """
    found = 0
    for datum, model in pairs:
        for observation in ctx.store.observations(datum):
            contradiction = engine.check_consistency(ctx, observation, model,
                                                     threshold)
            if contradiction is not None:
                found += 1
                out.write('contradiction: %s at %s with %s, p=%s\n' % (
                    datum, observation.time, model,
                    _value(contradiction.probability)))
    return found


def cmd_check(args, out):
    pairs = [parse_pair(p) for p in args.pair]
    kb = load_kb(args.kb)
    if kb is None:
        return EXIT_FAILURE
    ctx = make_context(args, kb)
    ingest(ctx, args.obs)
    for datum, model in pairs:
        kb.get(datum)
        kb.get(model)
    found = check_pairs(ctx, pairs, out)
    out.write('contradictions: %d\n' % found)
    return EXIT_FAILURE if found else EXIT_OK


def cmd_trend(args, out):
    kb = load_kb(args.kb)
    if kb is None:
        return EXIT_FAILURE
    ctx = make_context(args, kb)
    ingest(ctx, args.obs)
    variable = kb.get(args.var)
    procedure = variable.procedure
    if isinstance(procedure, Trend):
        spec = Trend(procedure.source,
                     procedure.epsilon if args.epsilon is None
                     else args.epsilon,
                     procedure.band if args.band is None else args.band)
    else:
        spec = Trend(args.var, parse_duration('12h') if args.epsilon is None
                     else args.epsilon, args.band or 0.0)
    density = engine.eval_trend(ctx, spec, args.at)
    for label in TREND_LABELS:
        out.write('%s: %s\n' % (label, _value(density.pmf[label])))
    return EXIT_OK


def run_session_line(ctx, line, out):
    """
    Runs one session script line.

    :raises: UsageError for malformed lines, NaiveError for engine errors
    """
    command, _, rest = line.partition(' ')
    rest = rest.strip()
    if command == 'observe':
        fields = next(csv.reader([rest]))
        if len(fields) < 3:
            raise UsageError('observe needs datum,time,value')
        engine.report_observation(ctx, decode_record(
            ctx.kb, fields[0], fields[1], ','.join(fields[2:])))
    elif command in ('eval', 'explain'):
        words = shlex.split(rest)
        if len(words) != 2:
            raise UsageError('%s needs a variable and a time' % command)
        t = engine.as_timespec(words[1])
        if command == 'eval':
            write_density(out, words[0], t,
                          engine.evaluate(ctx, words[0], t), 'summary')
        else:
            out.write(engine.explain(ctx, words[0], t).render() + '\n')
    elif command == 'check':
        words = rest.split()
        if len(words) not in (1, 2):
            raise UsageError('check needs datum=model [threshold]')
        threshold = float(words[1]) if len(words) == 2 else None
        found = check_pairs(ctx, [parse_pair(words[0])], out, threshold)
        out.write('contradictions: %d\n' % found)
    else:
        raise UsageError('unknown session command %r' % command)


def cmd_session(args, out):
    kb = load_kb(args.kb)
    if kb is None:
        return EXIT_FAILURE
    ctx = make_context(args, kb)
    with io.open(args.script, encoding='utf-8') as stream:
        lines = stream.read().splitlines()
    status = EXIT_OK
    for number, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        out.write('> %s\n' % line)
        try:
            run_session_line(ctx, line, out)
        except (UsageError, ValueError, NaiveError) as e:
            out.write('error: line %d: %s\n' % (number, e))
            status = EXIT_FAILURE
    return status


# -------------------
# Argument parsing
# -------------------
def _duration(text):
    try:
        duration = parse_duration(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    if duration <= datetime.timedelta(0):
        raise argparse.ArgumentTypeError('duration must be positive: %r' %
                                         text)
    return duration


def get_parser():
    """
    Returns the argument parser of the tool.
    """
    parser = argparse.ArgumentParser(
        prog='naive', description='Probabilistic temporal inference engine')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    parser.add_argument('--grid', type=int, default=None,
                        help='grid resolution (default: NAIVE_GRID or 512)')
    parser.add_argument('--log-level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='logging level (messages go to stderr)')
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    validate = commands.add_parser('validate', help='validate a knowledge '
                                   'base')
    validate.add_argument('kb', help='.nkb file')
    validate.set_defaults(func=cmd_validate)

    evaluate = commands.add_parser('eval', help='evaluate a variable')
    evaluate.add_argument('kb', help='.nkb file')
    evaluate.add_argument('obs', nargs='?', help='observation CSV file')
    evaluate.add_argument('--var', required=True, help='variable name')
    when = evaluate.add_mutually_exclusive_group(required=True)
    when.add_argument('--at', help='time instant')
    when.add_argument('--over', help='time interval, written start/end')
    when.add_argument('--series', help='time series, written t1;t2;...')
    evaluate.add_argument('--out', choices=['summary', 'csv', 'json'],
                          default='summary', help='output format')
    evaluate.add_argument('--explain', action='store_true',
                          help='print the evaluation trace')
    evaluate.add_argument('--no-cache', action='store_true',
                          help='disable the density cache')
    evaluate.set_defaults(func=cmd_eval)

    check = commands.add_parser('check', help='check observations against '
                                'models')
    check.add_argument('kb', help='.nkb file')
    check.add_argument('obs', nargs='?', help='observation CSV file')
    check.add_argument('--pair', action='append', required=True,
                       help='datum=model, may be repeated')
    check.add_argument('--threshold', type=float, default=None,
                       help='contradiction threshold (p <= threshold is '
                       'reported)')
    check.set_defaults(func=cmd_check)

    trend = commands.add_parser('trend', help='trend of a variable')
    trend.add_argument('kb', help='.nkb file')
    trend.add_argument('obs', nargs='?', help='observation CSV file')
    trend.add_argument('--var', required=True,
                       help='cardinal variable (or trend inference)')
    trend.add_argument('--at', required=True, help='time instant')
    trend.add_argument('--epsilon', type=_duration, default=None,
                       help='half width of the trend window (default 12h)')
    trend.add_argument('--band', type=float, default=None,
                       help='largest stable change (default 0)')
    trend.set_defaults(func=cmd_trend)

    session = commands.add_parser('session', help='run a session script')
    session.add_argument('kb', help='.nkb file')
    session.add_argument('script', help='session script')
    session.add_argument('--no-cache', action='store_true',
                         help='disable the density cache')
    session.add_argument('--threshold', type=float, default=None,
                         help='default contradiction threshold')
    session.set_defaults(func=cmd_session)
    return parser


def main(argv=None, out=None):
    """
    naive main function.

    :returns: the exit code
    """
    if out is None:
        out = sys.stdout
    parser = get_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    logging.basicConfig(level=getattr(logging, args.log_level),
                        stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        return args.func(args, out)
    except UsageError as e:
        _error(e)
        return EXIT_USAGE
    except RecordError as e:
        for line, message in e.problems:
            _error('%s:%d: %s' % (getattr(args, 'obs', ''), line, message))
        return EXIT_FAILURE
    except (IOError, OSError) as e:
        _error(e)
        return EXIT_IO
    except (NaiveError, ValueError) as e:
        _error(e)
        return EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(main())
