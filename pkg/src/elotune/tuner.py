"""Grid search over K schedules and game-count cutoffs.

Every configuration is scored the same way: replay the full match log, turn
each decisive game into a (rating difference, winner) point with a seeded
random player orientation, fit the logistic model on the chronologically
first 80% and measure F1 on the remaining 20%.
"""

from __future__ import annotations

import math
from concurrent.futures import Executor
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from elotune.classifier import (
    ClassificationMetrics,
    LabeledPoint,
    LogisticModel,
    evaluate_metrics,
    fit_logistic,
)
from elotune.data_io import MatchRecord, game_counts, percentile_cutoff
from elotune.errors import (
    ConfigurationError,
    DegenerateFitError,
    DomainError,
    InsufficientDataError,
    SeparationError,
    TuningError,
)
from elotune.rating import EloConfig, KSchedule, MatchOutcome, replay
from elotune.rng import SplitMix64

MIN_DECISIVE_RECORDS = 10
TRAIN_FRACTION = 0.8
DEFAULT_EDGES = (0.0, 30.0, 60.0, 100.0, 200.0, 500.0, 10000.0)

DEFAULT_K_TRIPLES = ((60, 30, 16), (30, 30, 30), (30, 16, 8), (100, 50, 25))


@dataclass(frozen=True)
class CutoffSpec:
    kind: Literal["fixed", "quantile"]
    first: float
    second: float

    @classmethod
    def fixed(cls, a: int, b: int) -> CutoffSpec:
        return cls("fixed", a, b)

    @classmethod
    def quantile(cls, k1: float, k2: float) -> CutoffSpec:
        return cls("quantile", k1, k2)

    def __post_init__(self) -> None:
        if self.kind not in ("fixed", "quantile"):
            raise DomainError(f"unknown cutoff kind {self.kind!r}")
        if not self.first < self.second:
            raise ConfigurationError(f"cutoff spec must be increasing, got {self.label}")

    @property
    def label(self) -> str:
        if self.kind == "fixed":
            return f"({self.first:g}, {self.second:g})"
        return f"([q{self.first:g}]+1, [q{self.second:g}]+1)"

    def to_json(self) -> dict:
        return {self.kind: [self.first, self.second]}


DEFAULT_CUTOFFS = (CutoffSpec.fixed(5, 10), CutoffSpec.quantile(10, 25), CutoffSpec.quantile(25, 50))


@dataclass(frozen=True)
class ParamGrid:
    k_triples: tuple[tuple[float, float, float], ...]
    cutoff_specs: tuple[CutoffSpec, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "k_triples", tuple(tuple(float(v) for v in t) for t in self.k_triples))
        object.__setattr__(self, "cutoff_specs", tuple(self.cutoff_specs))
        for ka, kb, kc in self.k_triples:
            if not ka >= kb >= kc > 0:
                raise ConfigurationError(f"K triple {(ka, kb, kc)} violates k_a >= k_b >= k_c > 0")

    def __len__(self) -> int:
        return len(self.k_triples) * len(self.cutoff_specs)

    def cells(self) -> list[tuple[tuple[float, float, float], CutoffSpec]]:
        """Declaration order: cutoff spec outermost, K triple innermost."""
        return [(k, c) for c in self.cutoff_specs for k in self.k_triples]

    @classmethod
    def standard(cls) -> ParamGrid:
        """Four K triples crossed with (5, 10), q10/q25 and q25/q50 cutoffs."""
        return cls(DEFAULT_K_TRIPLES, DEFAULT_CUTOFFS)

    @classmethod
    def from_json(cls, data: dict) -> ParamGrid:
        try:
            triples = [tuple(t) for t in data["k_triples"]]
            specs = []
            for item in data["cutoffs"]:
                ((kind, pair),) = item.items()
                a, b = pair
                specs.append(CutoffSpec(kind, a, b))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigurationError(f"malformed grid: {exc}") from None
        if any(len(t) != 3 for t in triples):
            raise ConfigurationError("every K triple needs exactly three values")
        if not triples or not specs:
            raise ConfigurationError("grid must contain at least one K triple and one cutoff spec")
        try:
            return cls(tuple(triples), tuple(specs))
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(f"malformed grid: {exc}") from None


@dataclass
class ConfigEvaluation:
    grid_index: int
    config: EloConfig
    resolved_cutoffs: tuple[int, int] | None
    model: LogisticModel | None = None
    metrics: ClassificationMetrics | None = None
    error: str | None = None
    cutoff_spec: CutoffSpec | None = None
    test: list[LabeledPoint] = field(default_factory=list, repr=False, compare=False)

    @property
    def failed(self) -> bool:
        return self.error is not None

    @property
    def f1(self) -> float | None:
        return None if self.metrics is None else self.metrics.f1


@dataclass(frozen=True)
class Bucket:
    lo: float
    hi: float
    games: int
    accuracy: float | None
    f1: float | None


def resolve_cutoffs(spec: CutoffSpec, counts: Sequence[int]) -> tuple[int, int]:
    if spec.kind == "fixed":
        pair = (int(spec.first), int(spec.second))
    else:
        pair = (percentile_cutoff(counts, spec.first), percentile_cutoff(counts, spec.second))
    if not pair[0] < pair[1]:
        raise ConfigurationError(f"{spec.label} resolves to non-increasing cutoffs {pair}")
    return pair


def labeled_points(records: Iterable[MatchRecord], config: EloConfig, seed: int) -> list[LabeledPoint]:
    """All decisive games as labeled points, in chronological order.

    Orientation is swapped with probability 1/2 per decisive game, using one
    coin from a SplitMix64 stream seeded with ``seed``.
    """
    result = replay(records, config)
    rng = SplitMix64(seed)
    points = []
    for entry in result.entries:
        if entry.outcome is MatchOutcome.DRAW:
            continue
        x = entry.rating_difference
        y = 1 if entry.outcome is MatchOutcome.WIN_P1 else 0
        if rng.coin():
            x, y = -x, 1 - y
        points.append(LabeledPoint(x, y))
    return points


def split_chronological(points: Sequence[LabeledPoint]) -> tuple[list[LabeledPoint], list[LabeledPoint]]:
    n_train = math.floor(TRAIN_FRACTION * len(points))
    return list(points[:n_train]), list(points[n_train:])


def build_dataset(
    records: Iterable[MatchRecord], config: EloConfig, seed: int
) -> tuple[list[LabeledPoint], list[LabeledPoint]]:
    points = labeled_points(records, config, seed)
    if len(points) < MIN_DECISIVE_RECORDS:
        raise InsufficientDataError(
            f"need at least {MIN_DECISIVE_RECORDS} decisive games, got {len(points)}"
        )
    return split_chronological(points)


def evaluate_config(
    records: Sequence[MatchRecord], config: EloConfig, seed: int, grid_index: int = 0
) -> ConfigEvaluation:
    """Fit on the training split and score on the test split.

    Separation and degenerate fits are reported through ``error`` rather than
    raised, so a grid can carry on past them.
    """
    ev = ConfigEvaluation(grid_index, config, config.schedule.cutoffs)
    train, test = build_dataset(records, config, seed)
    ev.test = test
    try:
        model = fit_logistic(train)
    except (SeparationError, DegenerateFitError) as exc:
        ev.error = f"{type(exc).__name__}: {exc}"
        return ev
    ev.model = model
    ev.metrics = evaluate_metrics(model, test)
    return ev


def _evaluate_cell(args) -> ConfigEvaluation:
    records, index, triple, spec, counts, seed, initial_rating, scale = args
    try:
        n_c1, n_c2 = resolve_cutoffs(spec, counts)
    except ConfigurationError as exc:
        placeholder = EloConfig(initial_rating, scale, KSchedule(*triple, 0, 1))
        return ConfigEvaluation(index, placeholder, None, error=str(exc), cutoff_spec=spec)
    config = EloConfig(initial_rating, scale, KSchedule(*triple, n_c1, n_c2))
    ev = evaluate_config(records, config, seed, grid_index=index)
    ev.cutoff_spec = spec
    return ev


def rank_evaluations(evaluations: Iterable[ConfigEvaluation]) -> list[ConfigEvaluation]:
    """F1 descending, ties by declaration order; failed evaluations last."""
    evaluations = list(evaluations)
    ok = sorted((e for e in evaluations if not e.failed), key=lambda e: (-e.f1, e.grid_index))
    bad = sorted((e for e in evaluations if e.failed), key=lambda e: e.grid_index)
    return ok + bad


def grid_search(
    records: Sequence[MatchRecord],
    grid: ParamGrid,
    seed: int,
    initial_rating: float = 1000.0,
    scale: float = 400.0,
    executor: Executor | None = None,
) -> list[ConfigEvaluation]:
    """Evaluate every grid cell and return them ranked; the head is selected.

    Quantile cutoffs are resolved once, from the per-player game counts of
    the whole input.
    """
    if len(grid) == 0:
        raise ConfigurationError("empty parameter grid")
    records = list(records)
    counts = game_counts(records)
    jobs = [
        (records, i, triple, spec, counts, seed, initial_rating, scale)
        for i, (triple, spec) in enumerate(grid.cells())
    ]
    mapper = executor.map if executor is not None else map
    ranked = rank_evaluations(mapper(_evaluate_cell, jobs))
    if ranked[0].failed:
        raise TuningError("every configuration failed: " + "; ".join(e.error for e in ranked))
    return ranked


def tie_groups(ranked: Sequence[ConfigEvaluation]) -> dict[int, int]:
    """grid_index -> tie group; group 0 holds the configurations sharing the top F1."""
    groups: dict[int, int] = {}
    group = -1
    last = None
    for ev in ranked:
        if ev.failed:
            continue
        if ev.f1 != last:
            group += 1
            last = ev.f1
        groups[ev.grid_index] = group
    return groups


def tuning_report(ranked: Sequence[ConfigEvaluation]) -> dict:
    """JSON-ready report; evaluations listed in declaration order."""
    groups = tie_groups(ranked)
    rows = []
    for ev in sorted(ranked, key=lambda e: e.grid_index):
        sched = ev.config.schedule
        n_c1, n_c2 = ev.resolved_cutoffs if ev.resolved_cutoffs else (None, None)
        m = ev.model
        rows.append(
            {
                "grid_index": ev.grid_index,
                "k_a": sched.k_a,
                "k_b": sched.k_b,
                "k_c": sched.k_c,
                "cutoff_spec": ev.cutoff_spec.to_json() if ev.cutoff_spec else None,
                "n_c1": n_c1,
                "n_c2": n_c2,
                "f1": ev.f1,
                "accuracy": ev.metrics.accuracy if ev.metrics else None,
                "beta_0": m.beta_0 if m else None,
                "beta_1": m.beta_1 if m else None,
                "se_0": m.se_0 if m else None,
                "se_1": m.se_1 if m else None,
                "p_0": m.p_0 if m else None,
                "p_1": m.p_1 if m else None,
                "converged": m.converged if m else None,
                "tie_group": groups.get(ev.grid_index),
                "error": ev.error,
            }
        )
    selected = ranked[0].grid_index
    return {
        "evaluations": rows,
        "selected": selected,
        "tie_set": sorted(i for i, g in groups.items() if g == 0),
    }


def bucket_analysis(
    model: LogisticModel,
    test: Sequence[LabeledPoint],
    edges: Sequence[float] = DEFAULT_EDGES,
) -> list[Bucket]:
    """Accuracy and F1 per |rating difference| bucket.

    Buckets are ``[e0, e1], (e1, e2], ...``. Empty buckets carry ``None``
    metrics. A point whose |x| lies outside ``[e0, e_last]`` is an error,
    since it would break the partition.
    """
    edges = list(edges)
    if len(edges) < 2 or any(b <= a for a, b in zip(edges, edges[1:])):
        raise DomainError(f"bucket edges must be strictly ascending, got {edges}")
    members: list[list[LabeledPoint]] = [[] for _ in range(len(edges) - 1)]
    for p in test:
        d = abs(p.x)
        if d < edges[0] or d > edges[-1]:
            raise DomainError(f"|rating difference| {d} outside bucket range [{edges[0]}, {edges[-1]}]")
        i = 0
        while d > edges[i + 1]:
            i += 1
        members[i].append(p)
    report = []
    for i, pts in enumerate(members):
        if pts:
            m = evaluate_metrics(model, pts)
            report.append(Bucket(edges[i], edges[i + 1], len(pts), m.accuracy, m.f1))
        else:
            report.append(Bucket(edges[i], edges[i + 1], 0, None, None))
    return report
