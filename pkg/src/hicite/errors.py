"""Exception types shared across the package."""

from __future__ import annotations


class HiciteError(Exception):
    """Base class for every domain error this package raises."""


class CorpusValidationError(HiciteError):
    """Corpus input violates format or referential rules.

    Carries *every* violation found, not just the first, so callers can
    report all of them in one pass.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        head = self.violations[0] if self.violations else "no violations"
        tail = f" (+{len(self.violations) - 1} more)" if len(self.violations) > 1 else ""
        super().__init__(head + tail)


class ConfigError(HiciteError):
    """Synthetic-corpus configuration is invalid; lists field-level problems."""

    def __init__(self, problems):
        self.problems = list(problems)
        head = self.problems[0] if self.problems else "invalid config"
        tail = f" (+{len(self.problems) - 1} more)" if len(self.problems) > 1 else ""
        super().__init__(head + tail)


class UnknownPublicationError(HiciteError):
    """A publication id does not exist in the corpus."""


class UnknownCellError(HiciteError):
    """A partition-cell key does not exist in the corpus."""


class WindowRangeError(HiciteError):
    """A citation-window length falls outside what the corpus can support."""


class EmptyReferenceSetError(HiciteError):
    """A selector was asked to pick highly cited publications from nothing."""
