import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ALL_PATTERNS, SWEEP_ALPHABET
from oracle_regex import oracle_matches
from regexteach.regex import (
    Alphabet,
    AnyChar,
    CharClass,
    Concat,
    DIGIT_CHARS,
    Literal,
    PatternSyntaxError,
    RegexAst,
    Repeat,
    compile_nfa,
    description_length,
    enumerate_strings,
    matches,
    parse,
    serialize,
    simulate,
)


class TestParse:
    def test_unbounded_repeat(self):
        assert parse("^a{3,}$") == RegexAst(Repeat(Literal("a"), 3, None))

    def test_digit_class_exact_repeat(self):
        assert parse("^\\d{5}$") == RegexAst(Repeat(CharClass(DIGIT_CHARS), 5, 5))

    def test_concat_with_wildcard(self):
        assert parse("^.*s$") == RegexAst(
            Concat((Repeat(AnyChar(), 0, None), Literal("s")))
        )

    def test_enumerated_class(self):
        assert parse("^[aA]+$") == RegexAst(
            Repeat(CharClass(frozenset("aA")), 1, None)
        )

    def test_range_class(self):
        node = parse("^[a-z]$").root
        assert node == CharClass(frozenset("abcdefghijklmnopqrstuvwxyz"))

    def test_digit_class_equals_explicit_range(self):
        assert parse("^\\d$") == parse("^[0-9]$")

    def test_escaped_brackets(self):
        assert parse("^\\[.*\\]$") == RegexAst(
            Concat((Literal("["), Repeat(AnyChar(), 0, None), Literal("]")))
        )

    def test_optional_quantifier(self):
        assert parse("^ab?$") == RegexAst(
            Concat((Literal("a"), Repeat(Literal("b"), 0, 1)))
        )

    def test_bounded_range_quantifier(self):
        assert parse("^a{2,4}$") == RegexAst(Repeat(Literal("a"), 2, 4))

    @pytest.mark.parametrize(
        "pattern,offset_of_error",
        [
            ("a{3,}", 0),  # missing ^
            ("^a{3,}", 5),  # missing $
            ("", 0),
            ("^a{3,$", 2),
            ("^[]$", 1),
            ("^[^a]$", 2),
            ("^a{4,2}$", 2),
            ("^*a$", 1),
            ("^a**$", 3),
            ("^(ab)$", 1),
            ("^a|b$", 2),
            ("^[z-a]$", 3),
            ("^a\\$", 3),  # escaped final dollar leaves no anchor
            ("^\\w$", 1),
            ("^a^b$", 2),
        ],
    )
    def test_rejects_with_offset(self, pattern, offset_of_error):
        with pytest.raises(PatternSyntaxError) as exc:
            parse(pattern)
        assert exc.value.offset == offset_of_error

    def test_roundtrip_all_table_patterns(self):
        for pattern in ALL_PATTERNS:
            ast = parse(pattern)
            assert parse(serialize(ast)) == ast

    def test_canonical_forms(self):
        assert serialize(parse("^[0-9]+$")) == "^\\d+$"
        assert serialize(parse("^a{1,}$")) == "^a+$"
        assert serialize(parse("^a{0,}$")) == "^a*$"
        assert serialize(parse("^[abc]$")) == "^[a-c]$"
        assert serialize(parse("^[aA]$")) == "^[Aa]$"


class TestDescriptionLength:
    @pytest.mark.parametrize(
        "pattern,expected",
        [
            ("^a{3,}$", 2),  # Repeat + Literal
            ("^.*s$", 4),  # Concat + Repeat + AnyChar + Literal
            ("^a$", 1),
            ("^\\d{5}$", 2),
            ("^\\[.*\\]$", 5),
            ("^.*s.*$", 6),
            ("^.*[a-z].*$", 6),
            ("^\\[.*$", 4),
        ],
    )
    def test_node_counts(self, pattern, expected):
        assert description_length(parse(pattern)) == expected

    def test_stable_across_reserialization(self):
        for pattern in ALL_PATTERNS:
            ast = parse(pattern)
            assert description_length(parse(serialize(ast))) == description_length(ast)

    def test_class_size_does_not_matter(self):
        assert description_length(parse("^\\d$")) == description_length(parse("^[ab]$"))


class TestMatches:
    @pytest.mark.parametrize(
        "pattern,text,expected",
        [
            ("^a{3,}$", "aaa", True),
            ("^a{3,}$", "aa", False),
            ("^a{3,}$", "aaaa", True),
            ("^\\[.*\\]$", "[dog]", True),
            ("^\\[.*\\]$", "dog", False),
            ("^\\d{5}$", "12345", True),
            ("^\\d{5}$", "1234A", False),
            ("^.*s$", "sneezes", True),
            ("^.*s$", "breeze", False),
            ("^a*$", "", True),
            ("^a+$", "", False),
            ("^.{5}$", "3214!", True),
        ],
    )
    def test_examples(self, pattern, text, expected):
        assert matches(parse(pattern), text) is expected

    def test_simulate_equals_matches(self):
        ast = parse("^a{3,}$")
        nfa = compile_nfa(ast)
        for text in ("", "aa", "aaa", "aaaa", "ab"):
            assert simulate(nfa, text) == matches(ast, text)

    def test_deterministic(self):
        ast = parse("^[aA]+$")
        assert [matches(ast, "aA") for _ in range(3)] == [True, True, True]

    def test_frontier_count_is_length_plus_one(self):
        nfa = compile_nfa(parse("^.*s.*$"))
        text = "lots"
        frontiers = [nfa.initial()]
        for ch in text:
            frontiers.append(nfa.step(frontiers[-1], ch))
        assert len(frontiers) == len(text) + 1
        assert nfa.accepts(frontiers[-1])

    def test_agrees_with_derivative_oracle_short_sweep(self):
        # Acceptance runs the full length-6 sweep; keep a quick one here.
        for pattern in ALL_PATTERNS:
            ast = parse(pattern)
            for text in enumerate_strings(SWEEP_ALPHABET, 3):
                assert matches(ast, text) == oracle_matches(ast, text), (
                    pattern,
                    text,
                )


@st.composite
def ast_nodes(draw, depth=0):
    choices = ["literal", "any", "class"]
    if depth < 2:
        choices += ["concat", "repeat"]
    kind = draw(st.sampled_from(choices))
    if kind == "literal":
        return Literal(draw(st.sampled_from("ab1")))
    if kind == "any":
        return AnyChar()
    if kind == "class":
        chars = draw(st.sets(st.sampled_from("ab1"), min_size=1, max_size=3))
        return CharClass(frozenset(chars))
    if kind == "concat":
        parts = draw(st.lists(ast_nodes(depth=depth + 1), min_size=0, max_size=3))
        return Concat(tuple(parts))
    lo = draw(st.integers(min_value=0, max_value=3))
    extra = draw(st.one_of(st.none(), st.integers(min_value=0, max_value=3)))
    hi = None if extra is None else lo + extra
    return Repeat(draw(ast_nodes(depth=2)), lo, hi)


class TestMatcherProperties:
    @settings(max_examples=200, deadline=None)
    @given(
        node=ast_nodes(),
        text=st.text(alphabet="ab1", max_size=6),
    )
    def test_nfa_agrees_with_derivative_oracle(self, node, text):
        ast = RegexAst(node)
        assert matches(ast, text) == oracle_matches(ast, text)


class TestEnumerateStrings:
    def test_single_char_alphabet(self):
        assert list(enumerate_strings(Alphabet.from_chars("a"), 2)) == ["", "a", "aa"]

    def test_two_char_alphabet(self):
        assert list(enumerate_strings(Alphabet.from_chars("ab"), 1)) == ["", "a", "b"]

    def test_count_matches_geometric_series(self):
        n = sum(1 for _ in enumerate_strings(Alphabet.from_chars("abc"), 4))
        assert n == (3**5 - 1) // 2 == 121

    def test_shortest_first_unique(self):
        out = list(enumerate_strings(Alphabet.from_chars("ab"), 3))
        assert len(out) == len(set(out))
        assert out == sorted(out, key=lambda s: (len(s), [out.index(s)]))

    @given(size=st.integers(min_value=1, max_value=4), max_len=st.integers(0, 4))
    @settings(deadline=None)
    def test_count_formula(self, size, max_len):
        alphabet = Alphabet.from_chars("abcd"[:size])
        expected = sum(size**k for k in range(max_len + 1))
        assert sum(1 for _ in enumerate_strings(alphabet, max_len)) == expected

    def test_alphabet_invariants(self):
        with pytest.raises(ValueError):
            Alphabet(())
        with pytest.raises(ValueError):
            Alphabet(("a", "a"))
        assert Alphabet.from_chars("aab").characters == ("a", "b")
        with pytest.raises(ValueError):
            list(enumerate_strings(Alphabet.from_chars("a"), -1))


def test_itertools_product_order_matches_alphabet_order():
    alphabet = Alphabet.from_chars("ba")
    strings = list(enumerate_strings(alphabet, 2))
    assert strings[:3] == ["", "b", "a"]
    assert strings[3:] == ["".join(p) for p in itertools.product("ba", repeat=2)]
