"""Match-log CSV I/O, game-count percentiles and rating summaries."""

from __future__ import annotations

import csv
import io
import math
import statistics
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

from elotune.errors import DomainError, ParseError
from elotune.rating import MatchOutcome, PlayerState

MATCH_HEADER = ("game_id", "timestamp", "player_1", "player_2", "outcome")
RATINGS_HEADER = ("player_id", "rating", "games_played")
TRAJECTORY_HEADER = ("player_id", "game_index", "rating")
SUMMARY_FIELDS = ("min", "p10", "p25", "p50", "mean", "p75", "p90", "max")


@dataclass(frozen=True)
class MatchRecord:
    game_id: str
    timestamp: int  # milliseconds since epoch
    player_1: str
    player_2: str
    outcome: MatchOutcome


@dataclass(frozen=True)
class RatingSummary:
    min: float
    p10: float
    p25: float
    p50: float
    mean: float
    p75: float
    p90: float
    max: float

    def as_row(self) -> list[float]:
        return [getattr(self, name) for name in SUMMARY_FIELDS]


def parse_matches(text: str) -> list[MatchRecord]:
    """Parse match CSV text into records, in file order."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input, expected header", 1)
    header = tuple(h.strip() for h in lines[0].split(","))
    if header != MATCH_HEADER:
        missing = [c for c in MATCH_HEADER if c not in header]
        detail = f"missing column(s) {missing}" if missing else f"unexpected header {header}"
        raise ParseError(f"{detail}; expected {','.join(MATCH_HEADER)}", 1)

    records: list[MatchRecord] = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != len(MATCH_HEADER):
            raise ParseError(f"expected {len(MATCH_HEADER)} fields, got {len(fields)}", lineno)
        game_id, ts, p1, p2, token = (f.strip() for f in fields)
        if not game_id:
            raise ParseError("empty game_id", lineno)
        if game_id in seen:
            raise ParseError(f"duplicate game_id {game_id!r}", lineno)
        try:
            timestamp = int(ts)
        except ValueError:
            raise ParseError(f"unparseable timestamp {ts!r}", lineno) from None
        if not p1 or not p2:
            raise ParseError("empty player id", lineno)
        if p1 == p2:
            raise ParseError(f"self-match: player {p1!r} on both sides", lineno)
        try:
            outcome = MatchOutcome(token)
        except ValueError:
            raise ParseError(f"unknown outcome token {token!r} (expected 1, 2 or D)", lineno) from None
        seen.add(game_id)
        records.append(MatchRecord(game_id, timestamp, p1, p2, outcome))
    return records


def write_matches(records: Iterable[MatchRecord]) -> str:
    out = [",".join(MATCH_HEADER)]
    for r in records:
        for value in (r.game_id, r.player_1, r.player_2):
            if "," in value or "\n" in value:
                raise DomainError(f"identifier {value!r} contains a delimiter")
        out.append(f"{r.game_id},{r.timestamp},{r.player_1},{r.player_2},{r.outcome.value}")
    return "\n".join(out) + "\n"


def read_matches(path: str | Path) -> list[MatchRecord]:
    return parse_matches(Path(path).read_text(encoding="utf-8"))


def save_matches(records: Iterable[MatchRecord], path: str | Path) -> None:
    Path(path).write_text(write_matches(records), encoding="utf-8", newline="\n")


def _write_rows(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def write_ratings(final: Mapping[Hashable, PlayerState]) -> str:
    """Final ratings CSV, rows sorted by player id."""
    rows = [(s.player_id, repr(s.rating), s.games_played) for _, s in sorted(final.items(), key=lambda kv: str(kv[0]))]
    return _write_rows(RATINGS_HEADER, rows)


def write_trajectories(trajectories: Mapping[Hashable, Sequence[float]]) -> str:
    rows = []
    for pid in sorted(trajectories, key=str):
        rows.extend((pid, i, repr(r)) for i, r in enumerate(trajectories[pid]))
    return _write_rows(TRAJECTORY_HEADER, rows)


def write_summary(summary: RatingSummary) -> str:
    return _write_rows(SUMMARY_FIELDS, [[repr(v) for v in summary.as_row()]])


def game_counts(records: Iterable[MatchRecord]) -> list[int]:
    """Per-player total game counts over every player present in ``records``."""
    counter: Counter[str] = Counter()
    for r in records:
        counter[r.player_1] += 1
        counter[r.player_2] += 1
    return [counter[p] for p in sorted(counter)]


def nearest_rank(values: Sequence[float], k: float) -> float:
    """Smallest value v with at least k% of ``values`` <= v."""
    if not values:
        raise DomainError("percentile of an empty collection")
    if not 0 <= k <= 100:
        raise DomainError(f"percent must lie in [0, 100], got {k}")
    ordered = sorted(values)
    rank = max(1, math.ceil(k / 100 * len(ordered)))
    return ordered[rank - 1]


def percentile_cutoff(counts: Sequence[int], k: float) -> int:
    """Game-count threshold ``floor(q_k) + 1`` from a game-count distribution."""
    if not counts:
        raise DomainError("game-count distribution is empty")
    if not 0 < k < 100:
        raise DomainError(f"percent must lie strictly inside (0, 100), got {k}")
    if min(counts) < 1:
        raise DomainError("game counts must all be >= 1")
    return math.floor(nearest_rank(counts, k)) + 1


def summary_stats(ratings: Sequence[float]) -> RatingSummary:
    if len(ratings) == 0:
        raise DomainError("summary of an empty rating list")
    values = sorted(float(r) for r in ratings)
    return RatingSummary(
        min=values[0],
        p10=nearest_rank(values, 10),
        p25=nearest_rank(values, 25),
        p50=nearest_rank(values, 50),
        mean=statistics.fmean(values),
        p75=nearest_rank(values, 75),
        p90=nearest_rank(values, 90),
        max=values[-1],
    )
