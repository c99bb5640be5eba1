"""Restricted regular-expression engine: parse, match, measure, enumerate."""

from .alphabet import Alphabet, enumerate_strings
from .nfa import NFA, compile_nfa, matches, simulate
from .nodes import (
    DIGIT_CHARS,
    AnyChar,
    CharClass,
    Concat,
    Literal,
    Node,
    RegexAst,
    Repeat,
    chars_of,
    description_length,
    serialize,
)
from .parser import PatternSyntaxError, parse

__all__ = [
    "Alphabet",
    "AnyChar",
    "CharClass",
    "Concat",
    "DIGIT_CHARS",
    "Literal",
    "NFA",
    "Node",
    "PatternSyntaxError",
    "RegexAst",
    "Repeat",
    "chars_of",
    "compile_nfa",
    "description_length",
    "enumerate_strings",
    "matches",
    "parse",
    "serialize",
    "simulate",
]
