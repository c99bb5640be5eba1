"""regexteach: pedagogical concept learning over restricted regular expressions.

The package bundles a small regex engine, a teaching-corpus data model with
seed data, three Bayesian agents (a weak-sampling learner, a helpful-teacher
model, and a teacher-aware learner), corpus analytics, a parameter-grid
comparison harness, and an HTTP session service for interactive teaching.
"""

__version__ = "0.1.0"

from .regex import (
    Alphabet,
    PatternSyntaxError,
    RegexAst,
    description_length,
    enumerate_strings,
    matches,
    parse,
    serialize,
)

__all__ = [
    "Alphabet",
    "PatternSyntaxError",
    "RegexAst",
    "description_length",
    "enumerate_strings",
    "matches",
    "parse",
    "serialize",
    "__version__",
]
