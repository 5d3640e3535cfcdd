# -*- coding: utf-8 -*-
"""
This module contains the diagnostic messages emitted by the knowledge base
parser and validator.

Diagnostics are values, not exceptions: a single pass over a knowledge base
reports every defect it finds.
"""


class Severity(object):
    """
    Enumerates the possible diagnostic severities.
    """
    #: Severity value for an information message.
    INFO = 0
    #: Severity value for a warning message.
    WARNING = 1
    #: Severity value for an error message.
    ERROR = 2

    @classmethod
    def to_string(cls, severity):
        """
        Converts a severity to a string.

        :param severity: Severity to convert
        :return: The severity string.
        """
        strings = {cls.INFO: "info",
                   cls.WARNING: "warning",
                   cls.ERROR: "error"}
        return strings[severity]


class Codes(object):
    """
    Enumerates the diagnostic codes.

    ``E1xx`` codes are lexical and syntactic errors reported by the parser,
    ``V2xx`` codes are semantic defects reported by
    :func:`naive.api.kb.validate`.
    """
    #: Character that does not start any token
    BAD_CHARACTER = 'E100'
    #: Token that does not fit the grammar
    UNEXPECTED_TOKEN = 'E101'
    #: End of file reached in the middle of a declaration
    UNEXPECTED_EOF = 'E102'
    #: Malformed number, duration or time literal
    BAD_LITERAL = 'E103'
    #: Name declared twice
    DUPLICATE_NAME = 'E104'
    #: Range name used before (or without) its declaration
    UNKNOWN_RANGE = 'E105'
    #: Unknown procedure, criterion or density constructor
    UNKNOWN_FORM = 'E106'
    #: Unknown, missing or repeated keyword argument
    BAD_ARGUMENT = 'E107'
    #: Range expression that does not build a valid range
    BAD_RANGE = 'E108'
    #: Constant density that does not fit its range
    BAD_CONSTANT = 'E109'
    #: Ranked chain with a conditional last branch or an unconditional
    #: inner branch
    BAD_CHAIN = 'E110'

    #: Reference to an undeclared variable
    UNDEFINED = 'V200'
    #: Dependency cycle
    CYCLE = 'V201'
    #: Operand with the wrong range kind
    KIND = 'V202'
    #: Threshold partition with a hole or an overlap
    COVERAGE = 'V203'
    #: Label that does not belong to the output range
    LABEL = 'V204'
    #: Incompatible ranges between a variable and a procedure result
    RANGE_MISMATCH = 'V205'
    #: Trend output range is not {decreasing, stable, increasing}
    TREND_RANGE = 'V206'
    #: Reference that must point to a datum
    NOT_DATUM = 'V207'
    #: Inconsistent variable definition (datum with a procedure,...)
    DEFINITION = 'V208'
    #: Numeric procedure parameter out of bounds
    PARAMETER = 'V209'
    #: Variable unable to accept the time shapes its procedure needs
    TIME_SHAPE = 'V210'


class SourceSpan(object):
    """
    Location of a piece of knowledge base text.

    Lines and columns are 1 based, ``end_column`` is exclusive.
    """
    def __init__(self, line, column, end_column=None, file=None):
        if end_column is None:
            end_column = column
        assert end_column >= column
        self.file = file
        self.line = line
        self.column = column
        self.end_column = end_column

    def __eq__(self, other):
        return (isinstance(other, SourceSpan) and
                (self.file, self.line, self.column, self.end_column) ==
                (other.file, other.line, other.column, other.end_column))

    def __hash__(self):
        return hash((self.file, self.line, self.column, self.end_column))

    def __str__(self):
        return '%s:%d:%d' % (self.file or '<text>', self.line, self.column)

    def __repr__(self):
        return 'SourceSpan(%r, %r, %r, %r)' % (
            self.line, self.column, self.end_column, self.file)


class Diagnostic(object):
    """
    Holds data for a message emitted by the parser or the validator.
    """
    def __init__(self, severity, code, message, span=None, variable=None):
        """
        :param severity: One of the :class:`Severity` values
        :param code: One of the :class:`Codes` values
        :param message: Human readable description
        :param span: :class:`SourceSpan` of the defect, if known
        :param variable: name of the variable the defect belongs to, if any
        """
        assert Severity.INFO <= severity <= Severity.ERROR
        self.severity = severity
        self.code = code
        self.message = message
        self.span = span
        self.variable = variable

    @property
    def severity_string(self):
        """
        Returns the diagnostic severity as a string.
        """
        return Severity.to_string(self.severity)

    @property
    def is_error(self):
        return self.severity == Severity.ERROR

    def to_dict(self):
        """
        Serializes a diagnostic to a dictionary, ready for json.
        """
        span = None
        if self.span is not None:
            span = {'file': self.span.file, 'line': self.span.line,
                    'column': self.span.column,
                    'end_column': self.span.end_column}
        return {'severity': self.severity_string, 'code': self.code,
                'message': self.message, 'span': span,
                'variable': self.variable}

    def __str__(self):
        location = str(self.span) if self.span else (self.variable or '-')
        return "{0}: {1} {2}: {3}".format(
            location, self.severity_string, self.code, self.message)

    def __repr__(self):
        return 'Diagnostic(%r, %r, %r)' % (
            self.severity_string, self.code, self.message)

    def __eq__(self, other):
        return (isinstance(other, Diagnostic) and
                self.code == other.code and self.message == other.message and
                self.span == other.span and self.variable == other.variable)

    def __hash__(self):
        return hash((self.code, self.message, self.variable))


def error(code, message, span=None, variable=None):
    """ Shortcut for an error diagnostic """
    return Diagnostic(Severity.ERROR, code, message, span, variable)


def warning(code, message, span=None, variable=None):
    """ Shortcut for a warning diagnostic """
    return Diagnostic(Severity.WARNING, code, message, span, variable)


def has_errors(diagnostics):
    """
    Tells whether a list of diagnostics contains at least one error.
    """
    return any(d.is_error for d in diagnostics)
