"""Finite alphabets and exhaustive short-string enumeration."""

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True)
class Alphabet:
    """A finite, ordered, duplicate-free set of single characters."""

    characters: tuple

    def __post_init__(self):
        if not self.characters:
            raise ValueError("alphabet must be nonempty")
        if any(len(c) != 1 for c in self.characters):
            raise ValueError("alphabet entries must be single characters")
        if len(set(self.characters)) != len(self.characters):
            raise ValueError("alphabet contains duplicates")

    @classmethod
    def from_chars(cls, chars: Iterable[str]) -> "Alphabet":
        """Build an alphabet, deduplicating while preserving first occurrence."""
        return cls(tuple(dict.fromkeys(chars)))

    def __len__(self) -> int:
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    def __contains__(self, ch: str) -> bool:
        return ch in self.characters


def enumerate_strings(alphabet: Alphabet, max_len: int) -> Iterator[str]:
    """All strings over the alphabet of length 0..max_len, exactly once each.

    Shortest strings first; within a length, lexicographic in the alphabet's
    own character order.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    yield ""
    for n in range(1, max_len + 1):
        for combo in itertools.product(alphabet.characters, repeat=n):
            yield "".join(combo)
