"""Exception types shared across the package."""


class RegexTeachError(Exception):
    """Base class for package-specific errors."""


class DatasetParseError(RegexTeachError):
    """A dataset line is not valid JSON or lacks required structure."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ValidationError(RegexTeachError):
    """A record violates a data-model invariant."""


class UnknownRule(RegexTeachError):
    """A rule identifier does not resolve to any rule space."""

    def __init__(self, rule_id: str):
        super().__init__(f"unknown rule id: {rule_id!r}")
        self.rule_id = rule_id


class DegeneratePool(RegexTeachError):
    """Every pool corpus has zero teacher-prior score for the hypothesis."""


class PoolMissingCorpus(RegexTeachError):
    """The observed corpus is not a member of the teacher's corpus pool."""


class InsufficientData(RegexTeachError):
    """Too few corpora for the requested statistic."""


class MissingDistractorCorpora(RegexTeachError):
    """The pool policy needs taught corpora for rules absent from the dataset."""

    def __init__(self, rule_ids):
        self.rule_ids = tuple(rule_ids)
        super().__init__(
            "no corpora in the dataset for rule(s): " + ", ".join(self.rule_ids)
        )


class UnknownSession(RegexTeachError):
    """No live session with the given id."""


class InvalidParams(RegexTeachError):
    """Bad session parameters or hypothesis space."""


class InvalidString(RegexTeachError):
    """Example text outside the accepted character set or length."""


class NoTargetDeclared(RegexTeachError):
    """Suggestions require a declared teaching target."""
