# -*- coding: utf-8 -*-
"""
This module contains the pygments lexer of the knowledge base definition
language (``.nkb`` files).

The lexer is used by the parser to split the text into tokens and is also
registered as a pygments lexer (``pygmentize -l nkb weight.nkb``).
"""
from pygments.lexer import RegexLexer, words
from pygments.token import (
    Comment, Error, Keyword, Literal, Name, Number, Operator, Punctuation,
    String, Text)


#: Reserved words: they cannot be used as names
KEYWORDS = ('range', 'datum', 'const', 'infer', 'cardinal', 'ordinal',
            'categorical', 'unit', 'if')

#: Names of the procedures, criteria and density constructors; they remain
#: usable as variable names
BUILTINS = ('add', 'sub', 'mul', 'div', 'threshold', 'nearest_obs',
            'linear_fit', 'causal_balance', 'chain', 'fuse', 'trend',
            'within', 'count', 'uniform', 'delta', 'pmf')

#: Token type of durations (``12h``)
Duration = Literal.Date
#: Token type of rates (``1.0/d``, ``0.5/12h``)
Rate = Literal.Other

_NUMBER = r'-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?'


class NkbLexer(RegexLexer):
    """
    Lexer of the knowledge base definition language.
    """
    name = 'NKB'
    aliases = ['nkb']
    filenames = ['*.nkb']
    mimetypes = ['text/x-nkb']

    tokens = {
        'root': [
            (r'\n', Text),
            (r'[ \t\r\f]+', Text),
            (r'#.*?$', Comment.Single),
            (words(KEYWORDS, suffix=r'\b'), Keyword),
            (words(BUILTINS, suffix=r'\b'), Name.Builtin),
            (_NUMBER + r'/\d*[smhd]\b', Rate),
            (r'-?\d+[smhd]\b', Duration),
            (_NUMBER, Number),
            (r'"[^"\n]*"', String),
            (r'[A-Za-z_][A-Za-z0-9_]*', Name),
            (r'\.\.', Punctuation),
            (r'[=<|@]', Operator),
            (r'[{}()\[\],:]', Punctuation),
        ]
    }


def tokenize(text):
    """
    Splits a text into tokens, dropping whitespace and comments.

    :returns: list of (position, token type, value); unknown characters are
        returned as :data:`pygments.token.Error` tokens.
    """
    tokens = []
    for pos, ttype, value in NkbLexer().get_tokens_unprocessed(text):
        if ttype in Text or ttype in Comment:
            continue
        tokens.append((pos, ttype, value))
    return tokens


__all__ = ['NkbLexer', 'tokenize', 'Error', 'Duration', 'Rate', 'KEYWORDS',
           'BUILTINS']
