"""Recursive-descent parser for the anchored restricted regex syntax.

Grammar (between the mandatory ``^`` and ``$``):

    body    := factor*
    factor  := atom quantifier?
    atom    := literal | '.' | escape | class
    escape  := '\\' ( 'd' | any of  \\ . [ ] { } + * ? ^ $ )
    class   := '[' item+ ']'       item := member | member '-' member
    quantifier := '*' | '+' | '?' | '{' n '}' | '{' n ',' '}' | '{' n ',' m '}'

No alternation, no grouping, no negated classes; see the package README for
the rationale.  All offsets in errors are byte offsets into the original
pattern (patterns are ASCII, so byte == character offsets).
"""

from .nodes import (
    DIGIT_CHARS,
    ESCAPABLE,
    AnyChar,
    CharClass,
    Concat,
    Literal,
    Node,
    RegexAst,
    Repeat,
)


class PatternSyntaxError(ValueError):
    """Malformed pattern; ``offset`` points at the offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


def parse(pattern: str) -> RegexAst:
    """Parse an anchored pattern like ``^a{3,}$`` into a RegexAst."""
    if not pattern:
        raise PatternSyntaxError("empty pattern", 0)
    if pattern[0] != "^":
        raise PatternSyntaxError("pattern must start with the '^' anchor", 0)
    if len(pattern) < 2 or pattern[-1] != "$":
        raise PatternSyntaxError(
            "pattern must end with the '$' anchor", max(len(pattern) - 1, 0)
        )
    if _trailing_backslashes(pattern) % 2 == 1:
        # The final '$' is escaped, so the closing anchor is missing.
        raise PatternSyntaxError(
            "pattern must end with the '$' anchor", len(pattern) - 1
        )
    return RegexAst(_Parser(pattern).parse_body())


def _trailing_backslashes(pattern: str) -> int:
    n = 0
    i = len(pattern) - 2
    while i >= 1 and pattern[i] == "\\":
        n += 1
        i -= 1
    return n


class _Parser:
    def __init__(self, pattern: str):
        self.pattern = pattern
        self.pos = 1  # skip the '^'
        self.end = len(pattern) - 1  # stop before the '$'

    def fail(self, message: str, offset: int | None = None):
        raise PatternSyntaxError(message, self.pos if offset is None else offset)

    def peek(self) -> str | None:
        return self.pattern[self.pos] if self.pos < self.end else None

    def parse_body(self) -> Node:
        parts = []
        while self.pos < self.end:
            parts.append(self.parse_factor())
        if len(parts) == 1:
            return parts[0]
        return Concat(tuple(parts))

    def parse_factor(self) -> Node:
        atom = self.parse_atom()
        quant = self.parse_quantifier()
        if quant is None:
            return atom
        return Repeat(atom, *quant)

    def parse_atom(self) -> Node:
        ch = self.peek()
        assert ch is not None
        if ch in "*+?{":
            self.fail("quantifier has nothing to repeat")
        if ch == "}":
            self.fail("unmatched '}'")
        if ch == "]":
            self.fail("unmatched ']'")
        if ch in "()|":
            self.fail(f"unsupported construct {ch!r} (no groups or alternation)")
        if ch in "^$":
            self.fail("anchors are only allowed at the pattern ends")
        if ch == ".":
            self.pos += 1
            return AnyChar()
        if ch == "\\":
            return self.parse_escape()
        if ch == "[":
            return self.parse_class()
        self.pos += 1
        return Literal(ch)

    def parse_escape(self) -> Node:
        at = self.pos
        self.pos += 1
        ch = self.peek()
        if ch is None:
            self.fail("dangling escape", at)
        self.pos += 1
        if ch == "d":
            return CharClass(DIGIT_CHARS)
        if ch in ESCAPABLE:
            return Literal(ch)
        self.fail(f"unsupported escape '\\{ch}'", at)

    def parse_class(self) -> Node:
        at = self.pos
        self.pos += 1
        chars: set = set()
        while True:
            ch = self.peek()
            if ch is None:
                self.fail("unterminated character class", at)
            if ch == "]":
                self.pos += 1
                break
            if ch == "^" and self.pos == at + 1:
                self.fail("negated character classes are not supported")
            member = self.parse_class_member()
            if isinstance(member, frozenset):  # \d shorthand
                chars.update(member)
                continue
            if self.peek() == "-" and self.pattern[self.pos + 1 : self.pos + 2] != "]":
                dash_at = self.pos
                self.pos += 1
                if self.peek() is None:
                    self.fail("unterminated character class", at)
                hi = self.parse_class_member()
                if isinstance(hi, frozenset):
                    self.fail("'\\d' cannot be a range endpoint", dash_at + 1)
                if ord(hi) < ord(member):
                    self.fail("reversed character range", dash_at)
                chars.update(chr(p) for p in range(ord(member), ord(hi) + 1))
            elif self.peek() == "-":
                self.fail("bare '-' in character class; escape it as '\\-'")
            else:
                chars.add(member)
        if not chars:
            self.fail("empty character class", at)
        return CharClass(frozenset(chars))

    def parse_class_member(self) -> str | frozenset:
        ch = self.peek()
        assert ch is not None
        if ch == "\\":
            at = self.pos
            self.pos += 1
            esc = self.peek()
            if esc is None:
                self.fail("dangling escape", at)
            self.pos += 1
            if esc == "d":
                return DIGIT_CHARS
            if esc in ESCAPABLE or esc == "-":
                return esc
            self.fail(f"unsupported escape '\\{esc}' in character class", at)
        self.pos += 1
        return ch

    def parse_quantifier(self) -> tuple[int, int | None] | None:
        ch = self.peek()
        if ch == "*":
            self.pos += 1
            return (0, None)
        if ch == "+":
            self.pos += 1
            return (1, None)
        if ch == "?":
            self.pos += 1
            return (0, 1)
        if ch == "{":
            return self.parse_braced_quantifier()
        return None

    def parse_braced_quantifier(self) -> tuple[int, int | None]:
        at = self.pos
        self.pos += 1
        lo = self.parse_int(at)
        ch = self.peek()
        if ch == "}":
            self.pos += 1
            return (lo, lo)
        if ch != ",":
            self.fail("unbalanced brace in quantifier", at)
        self.pos += 1
        if self.peek() == "}":
            self.pos += 1
            return (lo, None)
        hi = self.parse_int(at)
        if self.peek() != "}":
            self.fail("unbalanced brace in quantifier", at)
        self.pos += 1
        if hi < lo:
            self.fail("quantifier minimum exceeds maximum", at)
        return (lo, hi)

    def parse_int(self, brace_at: int) -> int:
        start = self.pos
        while self.peek() is not None and self.peek().isdigit():
            self.pos += 1
        if self.pos == start:
            self.fail("malformed quantifier: expected a number", brace_at)
        return int(self.pattern[start : self.pos])
