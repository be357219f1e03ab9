"""Exception hierarchy shared across the package."""

from __future__ import annotations


class EloTuneError(Exception):
    """Base class for every error raised deliberately by this package."""


class DomainError(EloTuneError, ValueError):
    """An argument lies outside the domain of the operation."""


class OrderingError(EloTuneError, ValueError):
    """Match records are not in chronological (timestamp, game_id) order."""


class ParseError(EloTuneError, ValueError):
    """Malformed match CSV. ``line`` is 1-based and counts the header."""

    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class DegenerateFitError(EloTuneError):
    """Logistic fit impossible: fewer than two points or only one label."""


class SeparationError(EloTuneError):
    """Logistic coefficients diverged because the data are perfectly separable."""


class InsufficientDataError(EloTuneError):
    pass


class ConfigurationError(EloTuneError, ValueError):
    pass


class TuningError(EloTuneError):
    """Every configuration in a grid failed to evaluate."""


class RuleViolation(EloTuneError):
    """An illegal Ludo move was submitted."""
