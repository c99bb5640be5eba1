"""Teaching-corpus data model, rule spaces, and dataset ingestion.

A corpus is an ordered sequence of labeled example strings produced by one
teacher for one rule.  Datasets are line-delimited JSON, one corpus per line:

    {"rule_id": "...", "teacher_id": "...", "source": "paper"|"synthetic"|"session",
     "examples": [{"text": "...", "label": "pos"|"neg"}, ...]}

Array order is temporal order.  Rule ids name the taught rule: the four
built-in spaces are taught under their own names ("3a", "zip-code",
"suffix-s", "bracketed"); corpora taught for a space's k-th distractor use
the derived id "<space>.d<k>" (e.g. "3a.d1" teaches ``^a{6,}$``).
"""

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .errors import DatasetParseError, UnknownRule, ValidationError
from .regex import Alphabet, RegexAst, chars_of, parse, serialize

POSITIVE = "pos"
NEGATIVE = "neg"
LABELS = (POSITIVE, NEGATIVE)
SOURCES = ("paper", "synthetic", "session")


def _printable_ascii(text: str) -> bool:
    return all(0x20 <= ord(c) <= 0x7E for c in text)


@dataclass(frozen=True)
class LabeledExample:
    text: str
    label: str
    position: int

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValidationError(f"label must be one of {LABELS}, got {self.label!r}")
        if self.position < 0:
            raise ValidationError("position must be nonnegative")
        if not _printable_ascii(self.text):
            raise ValidationError(f"text must be printable ASCII: {self.text!r}")

    @property
    def is_positive(self) -> bool:
        return self.label == POSITIVE


@dataclass(frozen=True)
class Corpus:
    rule_id: str
    teacher_id: str
    examples: tuple
    source: str = "session"

    def __post_init__(self):
        if not self.examples:
            raise ValidationError("a corpus must contain at least one example")
        if self.source not in SOURCES:
            raise ValidationError(f"source must be one of {SOURCES}")
        positions = [e.position for e in self.examples]
        if positions != list(range(len(self.examples))):
            raise ValidationError(
                f"positions must be 0..n-1 in order, got {positions}"
            )

    @classmethod
    def from_pairs(cls, rule_id, teacher_id, pairs, source="session") -> "Corpus":
        """Build a corpus from ordered (text, label) pairs."""
        examples = tuple(
            LabeledExample(text, label, i) for i, (text, label) in enumerate(pairs)
        )
        return cls(rule_id, teacher_id, examples, source)

    def signature(self) -> tuple:
        """Canonical identity of the corpus: its ordered (text, label) pairs."""
        return tuple((e.text, e.label) for e in self.examples)

    def __len__(self) -> int:
        return len(self.examples)


@dataclass(frozen=True)
class RuleSpace:
    """A finite hypothesis set: one target plus its distractors."""

    name: str
    target: RegexAst
    distractors: tuple

    def __post_init__(self):
        patterns = [serialize(h) for h in self.hypotheses]
        if len(set(patterns)) != len(patterns):
            raise ValidationError(f"rule space {self.name!r} has duplicate hypotheses")

    @property
    def hypotheses(self) -> tuple:
        return (self.target,) + self.distractors

    @property
    def patterns(self) -> tuple:
        return tuple(serialize(h) for h in self.hypotheses)

    def index_of(self, r: RegexAst) -> int:
        """Position of a hypothesis, by canonical serialization equality."""
        pattern = serialize(r)
        for i, h in enumerate(self.hypotheses):
            if serialize(h) == pattern:
                return i
        raise ValueError(f"{pattern!r} is not a hypothesis of space {self.name!r}")


@dataclass(frozen=True)
class Dataset:
    corpora: tuple
    rule_spaces: dict = field(compare=True)

    def corpora_for(self, rule_id: str) -> tuple:
        return tuple(c for c in self.corpora if c.rule_id == rule_id)


_TABLE = [
    ("3a", "^a{3,}$", ["^a{6,}$", "^[aA]+$"]),
    ("zip-code", "^\\d{5}$", ["^.{5}$", "^\\d+$"]),
    ("suffix-s", "^.*s$", ["^.*s.*$", "^.*[a-z].*$"]),
    ("bracketed", "^\\[.*\\]$", ["^\\[.*$", "^.*\\]$"]),
]

RULE_DESCRIPTIONS = {
    "3a": "Only lowercase a's (no other characters), and at least 3 of them",
    "zip-code": "Exactly 5 characters long and contains only digits 0-9",
    "suffix-s": "The string must end in s",
    "bracketed": "The string must begin with [ and end with ]",
}

_BUILTIN: dict = {}


def builtin_rule_spaces() -> dict:
    """The four built-in rule spaces, keyed by space name."""
    if not _BUILTIN:
        for name, target, distractors in _TABLE:
            _BUILTIN[name] = RuleSpace(
                name, parse(target), tuple(parse(d) for d in distractors)
            )
    return dict(_BUILTIN)


def resolve_rule(rule_id: str, spaces: dict | None = None):
    """Map a taught-rule id to (rule space, hypothesis index within it)."""
    spaces = builtin_rule_spaces() if spaces is None else spaces
    base, sep, suffix = rule_id.partition(".")
    space = spaces.get(base)
    if space is None:
        raise UnknownRule(rule_id)
    if not sep:
        return space, 0
    if suffix.startswith("d") and suffix[1:].isdigit():
        k = int(suffix[1:])
        if 1 <= k <= len(space.distractors):
            return space, k
    raise UnknownRule(rule_id)


def taught_regex(rule_id: str, spaces: dict | None = None) -> RegexAst:
    space, idx = resolve_rule(rule_id, spaces)
    return space.hypotheses[idx]


def rule_id_for(space: RuleSpace, hyp_index: int) -> str:
    return space.name if hyp_index == 0 else f"{space.name}.d{hyp_index}"


def mislabel_rate(c: Corpus, target: RegexAst) -> float:
    """Fraction of examples whose label disagrees with the target regex."""
    from .learners import error_count

    return error_count(c, target) / len(c.examples)


def polarity_counts(c: Corpus) -> tuple:
    """(number of positive examples, number of negative examples)."""
    n_pos = sum(1 for e in c.examples if e.is_positive)
    return n_pos, len(c.examples) - n_pos


def default_alphabet(corpora: Iterable[Corpus], hypotheses: Iterable[RegexAst]) -> Alphabet:
    """Characters seen in the data plus those named by the hypotheses."""
    chars: set = set()
    for c in corpora:
        for e in c.examples:
            chars.update(e.text)
    for h in hypotheses:
        chars.update(chars_of(h.root))
    if not chars:
        raise ValidationError("cannot derive an alphabet: no characters anywhere")
    return Alphabet.from_chars(sorted(chars))


def load_dataset(path, spaces: dict | None = None) -> Dataset:
    """Load and validate a line-delimited corpus file."""
    spaces = builtin_rule_spaces() if spaces is None else spaces
    corpora = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetParseError(line_number, f"invalid JSON: {exc}") from exc
            corpora.append(_corpus_from_record(record, line_number, spaces))
    if not corpora:
        raise ValidationError("no corpora")
    rule_spaces = {}
    for c in corpora:
        space, _ = resolve_rule(c.rule_id, spaces)
        rule_spaces[c.rule_id] = space
    return Dataset(tuple(corpora), rule_spaces)


def _corpus_from_record(record, line_number: int, spaces: dict) -> Corpus:
    if not isinstance(record, dict):
        raise DatasetParseError(line_number, "record must be a JSON object")
    for key in ("rule_id", "teacher_id", "source", "examples"):
        if key not in record:
            raise DatasetParseError(line_number, f"missing field {key!r}")
    resolve_rule(record["rule_id"], spaces)  # raises UnknownRule
    raw = record["examples"]
    if not isinstance(raw, list):
        raise DatasetParseError(line_number, "'examples' must be an array")
    examples = []
    for i, ex in enumerate(raw):
        if not isinstance(ex, dict) or "text" not in ex or "label" not in ex:
            raise DatasetParseError(
                line_number, f"example {i} must have 'text' and 'label'"
            )
        position = ex.get("position", i)
        if position != i:
            raise ValidationError(
                f"line {line_number}: example positions must be 0..n-1 in file order"
            )
        examples.append(LabeledExample(ex["text"], ex["label"], i))
    try:
        return Corpus(
            record["rule_id"], record["teacher_id"], tuple(examples), record["source"]
        )
    except ValidationError as exc:
        raise ValidationError(f"line {line_number}: {exc}") from exc


def save_dataset(dataset: Dataset, path) -> None:
    """Write a dataset in the canonical line-delimited format."""
    with open(path, "w", encoding="utf-8") as fh:
        for c in dataset.corpora:
            record = {
                "rule_id": c.rule_id,
                "teacher_id": c.teacher_id,
                "source": c.source,
                "examples": [{"text": e.text, "label": e.label} for e in c.examples],
            }
            fh.write(json.dumps(record) + "\n")


def _data_path(name: str) -> Path:
    return Path(resources.files("regexteach.data") / name)


def seed_dataset() -> Dataset:
    """The eight transcribed teaching corpora bundled with the package."""
    return load_dataset(_data_path("seed_corpora.jsonl"))


def bundled_dataset(include_synthetic: bool = True) -> Dataset:
    """Seed corpora plus the synthetic extension (see data/README.md)."""
    seed = seed_dataset()
    if not include_synthetic:
        return seed
    extra = load_dataset(_data_path("synthetic_corpora.jsonl"))
    rule_spaces = dict(seed.rule_spaces)
    rule_spaces.update(extra.rule_spaces)
    return Dataset(seed.corpora + extra.corpora, rule_spaces)
