"""
This module contains the exceptions raised by the naive API.

All exceptions derive from :class:`NaiveError` so that front ends can catch
engine failures with a single except clause.
"""


class NaiveError(Exception):
    """
    Base class of all naive errors.
    """


class RangeError(NaiveError):
    """
    Raised when a value, a bound or a density does not fit a range.
    """
    def __init__(self, message, range_=None):
        super(RangeError, self).__init__(message)
        #: The offending range, if any
        self.range = range_


class DensityError(NaiveError):
    """
    Raised when a density violates one of its invariants (negative mass,
    total mass different from 1, overlapping cells,...).
    """


class SingularityError(NaiveError):
    """
    Raised when a division would put mass next to a zero divisor.
    """
    def __init__(self, low, high):
        super(SingularityError, self).__init__(
            'divisor support intersects the neighborhood [%g, %g] of 0' % (
                low, high))
        self.low = low
        self.high = high


class ContradictionError(NaiveError):
    """
    Raised when combining evidence leaves no probability mass at all (the
    normalizer is zero).
    """
    def __init__(self, message='evidence sources have disjoint supports',
                 variable=None, time=None):
        super(ContradictionError, self).__init__(message)
        self.variable = variable
        self.time = time


class PartitionError(NaiveError):
    """
    Raised when a threshold partition is not a partition of the source range
    (overlap or hole).
    """


class KnowledgeBaseError(NaiveError):
    """
    Raised when a knowledge base is built or used inconsistently.
    """


class UnknownVariableError(KnowledgeBaseError):
    """
    Raised when a variable name is not declared in the knowledge base.
    """
    def __init__(self, name):
        super(UnknownVariableError, self).__init__(
            'unknown variable: %s' % name)
        self.name = name


class ShapeError(NaiveError):
    """
    Raised when a variable is evaluated for a time shape it does not accept.
    """
    def __init__(self, name, shape, accepted=()):
        super(ShapeError, self).__init__(
            '%s cannot be evaluated for a time %s (accepts: %s)' % (
                name, shape, ', '.join(sorted(accepted)) or 'nothing'))
        self.name = name
        self.shape = shape


class InferenceError(NaiveError):
    """
    Raised when a procedure cannot produce a density and has no fallback.
    """


class MissingDatumError(InferenceError):
    """
    Raised when a datum has no observation at the requested time.

    Procedures catch this error to fall back on their alternate procedure.
    """
    def __init__(self, name, time):
        super(MissingDatumError, self).__init__(
            'no observation of %s at %s' % (name, time))
        self.name = name
        self.time = time


class RecursionGuardError(InferenceError):
    """
    Raised when backward chaining goes deeper than the configured limit.
    """
    def __init__(self, name, limit):
        super(RecursionGuardError, self).__init__(
            'recursion limit (%d) exceeded while evaluating %s' % (
                limit, name))
        self.name = name
        self.limit = limit


class ParseError(NaiveError):
    """
    Raised by the high level loaders when a knowledge base text has error
    diagnostics.
    """
    def __init__(self, diagnostics):
        super(ParseError, self).__init__(
            '\n'.join(str(d) for d in diagnostics))
        self.diagnostics = diagnostics


class RecordError(NaiveError):
    """
    Raised when observation records cannot be decoded.
    """
    def __init__(self, problems):
        super(RecordError, self).__init__('\n'.join(
            'line %d: %s' % (line, msg) for line, msg in problems))
        #: list of (line number, message)
        self.problems = problems
