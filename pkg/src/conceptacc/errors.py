"""Exception types shared across the package."""

from __future__ import annotations


class ConceptAccError(Exception):
    """Base class for all errors raised by conceptacc."""


class EmptyReference(ConceptAccError, ValueError):
    """Accuracy is undefined for an empty reference."""


class NoScorableRecords(ConceptAccError, ValueError):
    """Every record in a corpus was skipped."""


class UnknownAttribute(ConceptAccError, ValueError):
    def __init__(self, name: str):
        super().__init__(f"unknown attribute: {name!r}")
        self.name = name


class MalformedUnit(ConceptAccError, ValueError):
    def __init__(self, text: str, reason: str = "expected 'attribute:value'"):
        super().__init__(f"malformed semantic unit {text!r}: {reason}")
        self.text = text


class DegenerateInput(ConceptAccError, ValueError):
    """Least-squares fit needs at least two distinct x values."""


class EmptyVocabulary(ConceptAccError, ValueError):
    pass


class _LocatedError(ConceptAccError):
    def __init__(self, path, line: int | None, reason: str):
        self.path = str(path) if path is not None else "<string>"
        self.line = line
        self.reason = reason
        where = self.path if line is None else f"{self.path}:{line}"
        super().__init__(f"{where}: {reason}")


class ConfigError(_LocatedError, ValueError):
    """Malformed inventory, lexicon, rule or template file."""


class FormatError(_LocatedError, ValueError):
    """Malformed corpus file."""
