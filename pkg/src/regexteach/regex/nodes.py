"""AST for the restricted regular-expression language.

Patterns are whole-string: the surface syntax requires ``^``/``$`` anchors,
which the parser consumes, so the tree itself has no anchor nodes.  Nodes are
immutable and hashable; structural equality doubles as pattern identity.
"""

from dataclasses import dataclass

DIGIT_CHARS = frozenset("0123456789")

# Characters that must be backslash-escaped in the surface syntax.
ESCAPABLE = frozenset("\\.[]{}+*?^$()|")


class Node:
    """Base class for AST nodes."""


@dataclass(frozen=True)
class Literal(Node):
    char: str

    def __post_init__(self):
        if len(self.char) != 1:
            raise ValueError("Literal holds exactly one character")


@dataclass(frozen=True)
class AnyChar(Node):
    """The ``.`` wildcard: matches any single character."""


@dataclass(frozen=True)
class CharClass(Node):
    """An explicit, non-negated character set (``\\d``, ``[a-z]``, ``[aA]``)."""

    chars: frozenset

    def __post_init__(self):
        if not self.chars:
            raise ValueError("character class must be nonempty")
        if any(len(c) != 1 for c in self.chars):
            raise ValueError("character class members must be single characters")


@dataclass(frozen=True)
class Concat(Node):
    parts: tuple


@dataclass(frozen=True)
class Repeat(Node):
    """Quantified node; ``max=None`` means unbounded."""

    child: Node
    min: int
    max: int | None

    def __post_init__(self):
        if self.min < 0:
            raise ValueError("Repeat.min must be nonnegative")
        if self.max is not None and self.max < self.min:
            raise ValueError("Repeat.max must be >= Repeat.min")


@dataclass(frozen=True)
class RegexAst:
    root: Node

    def __str__(self) -> str:
        return serialize(self)


def description_length(r: RegexAst) -> int:
    """Size |r| of the hypothesis: total AST node count.

    A character class counts as a single node regardless of how many
    characters it contains, so ``\\d`` and ``[0-9]`` have equal length.
    """
    return _count(r.root)


def _count(node: Node) -> int:
    if isinstance(node, Concat):
        return 1 + sum(_count(p) for p in node.parts)
    if isinstance(node, Repeat):
        return 1 + _count(node.child)
    return 1


def serialize(r: RegexAst) -> str:
    """Canonical anchored surface form; parse(serialize(r)) == r."""
    return "^" + _emit(r.root) + "$"


def _emit(node: Node) -> str:
    if isinstance(node, Literal):
        return _escaped(node.char)
    if isinstance(node, AnyChar):
        return "."
    if isinstance(node, CharClass):
        return _class_form(node.chars)
    if isinstance(node, Concat):
        return "".join(_emit(p) for p in node.parts)
    if isinstance(node, Repeat):
        if isinstance(node.child, (Concat, Repeat)):
            # The surface syntax has no grouping, so such trees (only
            # constructible programmatically) have no faithful rendering.
            raise ValueError("cannot serialize a quantifier over a composite node")
        return _emit(node.child) + _quantifier(node.min, node.max)
    raise TypeError(f"unknown node type: {type(node).__name__}")


def _escaped(ch: str) -> str:
    return "\\" + ch if ch in ESCAPABLE else ch


def _quantifier(lo: int, hi: int | None) -> str:
    if hi is None:
        if lo == 0:
            return "*"
        if lo == 1:
            return "+"
        return f"{{{lo},}}"
    if lo == hi:
        return f"{{{lo}}}"
    return f"{{{lo},{hi}}}"


def _class_form(chars: frozenset) -> str:
    if chars == DIGIT_CHARS:
        return "\\d"
    ordered = sorted(chars)
    points = [ord(c) for c in ordered]
    if len(ordered) >= 3 and points[-1] - points[0] == len(ordered) - 1:
        return f"[{_class_escaped(ordered[0])}-{_class_escaped(ordered[-1])}]"
    return "[" + "".join(_class_escaped(c) for c in ordered) + "]"


def _class_escaped(ch: str) -> str:
    return "\\" + ch if ch in "]\\-^" else ch


def chars_of(node: Node) -> set:
    """All concrete characters mentioned by a pattern (wildcards contribute none)."""
    if isinstance(node, Literal):
        return {node.char}
    if isinstance(node, CharClass):
        return set(node.chars)
    if isinstance(node, Concat):
        out: set = set()
        for p in node.parts:
            out |= chars_of(p)
        return out
    if isinstance(node, Repeat):
        return chars_of(node.child)
    return set()
