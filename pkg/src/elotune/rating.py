"""Elo expected score, experience-dependent K schedule and chronological replay."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import TYPE_CHECKING, Callable, Hashable, Iterable

from elotune.errors import DomainError, OrderingError

if TYPE_CHECKING:
    from elotune.data_io import MatchRecord

DEFAULT_INITIAL_RATING = 1000.0
DEFAULT_SCALE = 400.0


class MatchOutcome(Enum):
    WIN_P1 = "1"
    WIN_P2 = "2"
    DRAW = "D"

    @property
    def scores(self) -> tuple[float, float]:
        """Actual scores ``(S_1, S_2)``; they always sum to 1."""
        if self is MatchOutcome.WIN_P1:
            return 1.0, 0.0
        if self is MatchOutcome.WIN_P2:
            return 0.0, 1.0
        return 0.5, 0.5


@dataclass(frozen=True)
class KSchedule:
    """Stepwise non-increasing K factor.

    ``k_a`` applies while ``games_played <= n_c1``, ``k_b`` while
    ``n_c1 < games_played <= n_c2`` and ``k_c`` afterwards.
    """

    k_a: float = 60.0
    k_b: float = 30.0
    k_c: float = 16.0
    n_c1: int = 5
    n_c2: int = 10

    def __post_init__(self) -> None:
        if not (self.k_a >= self.k_b >= self.k_c > 0):
            raise DomainError(f"K values must satisfy k_a >= k_b >= k_c > 0, got {self.triple}")
        if int(self.n_c1) != self.n_c1 or int(self.n_c2) != self.n_c2 or self.n_c1 < 0:
            raise DomainError("game-count cutoffs must be non-negative integers")
        if not self.n_c1 < self.n_c2:
            raise DomainError(f"cutoffs must satisfy n_c1 < n_c2, got ({self.n_c1}, {self.n_c2})")

    @property
    def triple(self) -> tuple[float, float, float]:
        return (self.k_a, self.k_b, self.k_c)

    @property
    def cutoffs(self) -> tuple[int, int]:
        return (self.n_c1, self.n_c2)


@dataclass(frozen=True)
class EloConfig:
    initial_rating: float = DEFAULT_INITIAL_RATING
    scale: float = DEFAULT_SCALE
    schedule: KSchedule = field(default_factory=KSchedule)

    def __post_init__(self) -> None:
        if not math.isfinite(self.scale) or self.scale <= 0:
            raise DomainError(f"scale must be positive and finite, got {self.scale}")
        if not math.isfinite(self.initial_rating):
            raise DomainError("initial rating must be finite")


@dataclass(frozen=True)
class PlayerState:
    player_id: Hashable
    rating: float
    games_played: int = 0


@dataclass(frozen=True)
class HistoryEntry:
    game_id: str
    player_1: Hashable
    player_2: Hashable
    pre_rating_1: float
    pre_rating_2: float
    post_rating_1: float
    post_rating_2: float
    expected_score_1: float
    k_applied_1: float
    k_applied_2: float
    outcome: MatchOutcome

    @property
    def rating_difference(self) -> float:
        """Pre-match ``rating_1 - rating_2``."""
        return self.pre_rating_1 - self.pre_rating_2


def expected_score(rating_a: float, rating_b: float, scale: float = DEFAULT_SCALE) -> float:
    """Probability-like expected score of ``a`` against ``b``.

    >>> round(expected_score(1200, 800), 6)
    0.909091
    """
    if not (math.isfinite(rating_a) and math.isfinite(rating_b)):
        raise DomainError("ratings must be finite")
    if not math.isfinite(scale) or scale <= 0:
        raise DomainError(f"scale must be positive and finite, got {scale}")
    return 1.0 / (1.0 + 10.0 ** ((rating_b - rating_a) / scale))


def k_for(schedule: KSchedule, games_played: int) -> float:
    if games_played < 0:
        raise DomainError("games_played must be non-negative")
    if games_played <= schedule.n_c1:
        return schedule.k_a
    if games_played <= schedule.n_c2:
        return schedule.k_b
    return schedule.k_c


def apply_match(
    state_1: PlayerState,
    state_2: PlayerState,
    outcome: MatchOutcome,
    config: EloConfig,
    game_id: str = "",
) -> tuple[PlayerState, PlayerState, HistoryEntry]:
    """Update both players after one game.

    Each player's K comes from their own games-played count *before* the
    match. Player 2's expected score is taken as ``1 - E_1`` so the pair is
    exactly complementary.
    """
    if state_1.player_id == state_2.player_id:
        raise DomainError(f"player {state_1.player_id!r} cannot play against itself")
    e1 = expected_score(state_1.rating, state_2.rating, config.scale)
    e2 = 1.0 - e1
    s1, s2 = outcome.scores
    k1 = k_for(config.schedule, state_1.games_played)
    k2 = k_for(config.schedule, state_2.games_played)
    r1 = state_1.rating + k1 * (s1 - e1)
    r2 = state_2.rating + k2 * (s2 - e2)
    entry = HistoryEntry(
        game_id=game_id,
        player_1=state_1.player_id,
        player_2=state_2.player_id,
        pre_rating_1=state_1.rating,
        pre_rating_2=state_2.rating,
        post_rating_1=r1,
        post_rating_2=r2,
        expected_score_1=e1,
        k_applied_1=k1,
        k_applied_2=k2,
        outcome=outcome,
    )
    new_1 = replace(state_1, rating=r1, games_played=state_1.games_played + 1)
    new_2 = replace(state_2, rating=r2, games_played=state_2.games_played + 1)
    return new_1, new_2, entry


UpdateRule = Callable[
    [PlayerState, PlayerState, MatchOutcome, EloConfig, str],
    "tuple[PlayerState, PlayerState, HistoryEntry]",
]


@dataclass
class ReplayResult:
    entries: list[HistoryEntry]
    final: dict[Hashable, PlayerState]
    # player -> ratings after 0, 1, 2, ... of their own games
    trajectories: dict[Hashable, list[float]]


def check_chronological(records: Iterable[MatchRecord]) -> None:
    prev = None
    for rec in records:
        key = (rec.timestamp, rec.game_id)
        if prev is not None and key < prev:
            raise OrderingError(
                f"record {rec.game_id!r} (t={rec.timestamp}) precedes {prev[1]!r} (t={prev[0]})"
            )
        prev = key


def replay(
    records: Iterable[MatchRecord],
    config: EloConfig,
    update: UpdateRule = apply_match,
) -> ReplayResult:
    """Replay a chronologically sorted match log from scratch.

    Unseen players enter at ``config.initial_rating`` with zero games.
    ``update`` is the per-game rule; any callable with the signature of
    :func:`apply_match` can be substituted to replay another rating system.
    """
    records = list(records)
    check_chronological(records)
    states: dict[Hashable, PlayerState] = {}
    trajectories: dict[Hashable, list[float]] = {}
    entries: list[HistoryEntry] = []
    for rec in records:
        for pid in (rec.player_1, rec.player_2):
            if pid not in states:
                states[pid] = PlayerState(pid, config.initial_rating, 0)
                trajectories[pid] = [config.initial_rating]
        s1, s2, entry = update(states[rec.player_1], states[rec.player_2], rec.outcome, config, rec.game_id)
        states[rec.player_1] = s1
        states[rec.player_2] = s2
        trajectories[rec.player_1].append(s1.rating)
        trajectories[rec.player_2].append(s2.rating)
        entries.append(entry)
    return ReplayResult(entries=entries, final=states, trajectories=trajectories)
