"""Elo ratings with experience-dependent K, tuned for predictive F1."""

from elotune.rating import (
    EloConfig,
    HistoryEntry,
    KSchedule,
    MatchOutcome,
    PlayerState,
    apply_match,
    expected_score,
    k_for,
    replay,
)

__version__ = "0.1.0"

__all__ = [
    "EloConfig",
    "HistoryEntry",
    "KSchedule",
    "MatchOutcome",
    "PlayerState",
    "apply_match",
    "expected_score",
    "k_for",
    "replay",
]
