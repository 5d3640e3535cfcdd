"""
This package contains the knowledge base definition language: a pygments
lexer, a parser reporting diagnostics with source spans and a canonical
serializer.

::

    from naive import dsl

    kb = dsl.load('weight.nkb')
    text = dsl.serialize(kb)

"""
import io
import logging

from naive.api import diagnostics as _diagnostics
from naive.api.errors import ParseError
from naive.api.kb import validate
from naive.dsl.parser import parse
from naive.dsl.serializer import serialize


def _logger():
    """ Returns module's logger """
    return logging.getLogger(__name__)


def check(text, file=None):
    """
    Parses and validates a knowledge base text in one pass.

    Validation diagnostics get the span of the declaration of their
    variable. The knowledge base is only validated when it parsed without
    error.

    :returns: (KnowledgeBase, list of Diagnostic)
    """
    kb, found = parse(text, file)
    if _diagnostics.has_errors(found):
        return kb, found
    for diagnostic in validate(kb):
        if diagnostic.span is None and diagnostic.variable in kb.spans:
            diagnostic.span = kb.spans[diagnostic.variable]
        found.append(diagnostic)
    return kb, found


def loads(text, file=None):
    """
    Returns the knowledge base of a text.

    :raises: ParseError if the text has errors (syntax or validation)
    """
    kb, found = check(text, file)
    if _diagnostics.has_errors(found):
        raise ParseError([d for d in found if d.is_error])
    return kb


def load(path, encoding='utf-8'):
    """
    Returns the knowledge base of a ``.nkb`` file.

    :raises: IOError, ParseError
    """
    _logger().debug('loading %s', path)
    with io.open(path, encoding=encoding) as stream:
        return loads(stream.read(), path)


__all__ = ['check', 'load', 'loads', 'parse', 'serialize']
