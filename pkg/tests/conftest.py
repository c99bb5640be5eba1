import pytest

from regexteach.corpus import builtin_rule_spaces, bundled_dataset, seed_dataset
from regexteach.regex import Alphabet

# Every surface pattern used across the four built-in rule spaces.
ALL_PATTERNS = [
    "^a{3,}$",
    "^a{6,}$",
    "^[aA]+$",
    "^\\d{5}$",
    "^.{5}$",
    "^\\d+$",
    "^.*s$",
    "^.*s.*$",
    "^.*[a-z].*$",
    "^\\[.*\\]$",
    "^\\[.*$",
    "^.*\\]$",
]

# Alphabet used for exhaustive matcher-vs-oracle sweeps.
SWEEP_ALPHABET = Alphabet.from_chars("aAs12[]")


@pytest.fixture(scope="session")
def spaces():
    return builtin_rule_spaces()


@pytest.fixture(scope="session")
def seed_data():
    """The eight transcribed teaching corpora."""
    return seed_dataset()


@pytest.fixture(scope="session")
def bundled():
    """Seed corpora plus the synthetic extension used by the grid harness."""
    return bundled_dataset()
