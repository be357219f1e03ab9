"""Command-line entry point.

Exit status: 0 on success, 1 on a usage error, 2 on a data error (bad or
missing input file, malformed config, failed tuning).
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from pathlib import Path
from typing import Sequence

from elotune import data_io, svg
from elotune.errors import ConfigurationError, EloTuneError
from elotune.rating import EloConfig, KSchedule, replay
from elotune.tuner import (
    DEFAULT_EDGES,
    CutoffSpec,
    ParamGrid,
    bucket_analysis,
    evaluate_config,
    grid_search,
    resolve_cutoffs,
    tuning_report,
)

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
HISTOGRAM_BIN_WIDTH = 25.0
MAX_DEFAULT_PLAYERS = 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _cutoff_arg(text: str) -> CutoffSpec:
    """``5,10`` for fixed game counts, ``q10,q25`` for percentiles."""
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated cutoffs, got {text!r}")
    try:
        if all(p.strip().lower().startswith("q") for p in parts):
            return CutoffSpec.quantile(*(float(p.strip()[1:]) for p in parts))
        return CutoffSpec.fixed(*(int(p) for p in parts))
    except (ValueError, ConfigurationError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _cutoff_from_json(value) -> CutoffSpec:
    if isinstance(value, list):
        return CutoffSpec.fixed(*value)
    if isinstance(value, dict) and len(value) == 1:
        ((kind, pair),) = value.items()
        return CutoffSpec(kind, *pair)
    raise ConfigurationError(f"cannot read cutoffs from {value!r}")


def _load_config(args, records) -> EloConfig:
    """EloConfig from --config JSON or --k/--cutoffs flags, resolving quantiles on ``records``."""
    k, spec = [60.0, 30.0, 16.0], CutoffSpec.fixed(5, 10)
    initial, scale = args.initial_rating, args.scale
    if args.config:
        data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        try:
            k = [float(v) for v in data.get("k", k)]
            if "cutoffs" in data:
                spec = _cutoff_from_json(data["cutoffs"])
            initial = float(data.get("initial_rating", initial))
            scale = float(data.get("scale", scale))
        except (TypeError, ValueError, AttributeError) as exc:
            raise ConfigurationError(f"malformed config {args.config}: {exc}") from None
    if args.k is not None:
        k = args.k
    if args.cutoffs is not None:
        spec = args.cutoffs
    if len(k) != 3:
        raise ConfigurationError(f"--k needs three values, got {k}")
    n_c1, n_c2 = resolve_cutoffs(spec, data_io.game_counts(records))
    return EloConfig(initial, scale, KSchedule(*k, n_c1, n_c2))


def _write(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


# --- commands ---------------------------------------------------------------


def cmd_simulate(args) -> None:
    from elotune.ludo import ALL_KINDS, Bot, LudoRules, generate_dataset

    if args.games < 1:
        raise UsageError("simulate: --games must be >= 1")
    bots = [Bot(k, args.mcts_iterations) for k in ALL_KINDS]
    rules = LudoRules(max_turns_per_player=args.max_turns)
    records, results = generate_dataset(bots, args.games, args.seed, rules, keep_results=True)
    data_io.save_matches(records, args.out)
    if args.transcripts:
        out_dir = Path(args.transcripts)
        out_dir.mkdir(parents=True, exist_ok=True)
        for rec, res in zip(records, results):
            _write(out_dir / f"{rec.game_id}.json", res.transcript_json() + "\n")


def cmd_tune(args) -> None:
    records = data_io.read_matches(args.matches)
    if args.grid:
        grid = ParamGrid.from_json(json.loads(Path(args.grid).read_text(encoding="utf-8")))
    else:
        grid = ParamGrid.standard()
    ranked = grid_search(records, grid, args.seed, args.initial_rating, args.scale)
    report = tuning_report(ranked)
    _write(args.out, json.dumps(report, indent=2) + "\n")
    best = ranked[0]
    s = best.config.schedule
    print(
        f"selected grid_index={best.grid_index} k=({s.k_a:g},{s.k_b:g},{s.k_c:g}) "
        f"cutoffs=({s.n_c1},{s.n_c2}) f1={best.f1:.4f} tie_set={report['tie_set']}"
    )


def cmd_rate(args) -> None:
    records = data_io.read_matches(args.matches)
    result = replay(records, _load_config(args, records))
    _write(args.out, data_io.write_ratings(result.final))
    trajectory = args.trajectory or str(Path(args.out).with_suffix(".trajectory.csv"))
    _write(trajectory, data_io.write_trajectories(result.trajectories))


def cmd_buckets(args) -> None:
    records = data_io.read_matches(args.matches)
    ev = evaluate_config(records, _load_config(args, records), args.seed)
    if ev.failed:
        raise EloTuneError(f"evaluation failed: {ev.error}")
    rows = []
    for b in bucket_analysis(ev.model, ev.test, args.edges):
        fmt = lambda v: "" if v is None else repr(v)  # noqa: E731
        rows.append(f"{b.lo:g},{b.hi:g},{b.games},{fmt(b.accuracy)},{fmt(b.f1)}")
    _write(args.out, "bucket_lo,bucket_hi,games,accuracy,f1\n" + "".join(r + "\n" for r in rows))


def _default_players(result) -> list[str]:
    final = result.final
    if len(final) <= MAX_DEFAULT_PLAYERS:
        return sorted(final, key=lambda p: -final[p].rating)
    by_rating = sorted(final, key=lambda p: (final[p].rating, str(p)))
    picks = [by_rating[-1], by_rating[len(by_rating) // 2], by_rating[0]]
    busiest = max(final, key=lambda p: (final[p].games_played, str(p)))
    return list(dict.fromkeys(picks + [busiest]))


def cmd_report(args) -> None:
    records = data_io.read_matches(args.matches)
    result = replay(records, _load_config(args, records))
    if not result.final:
        raise EloTuneError("no matches to report on")
    ratings = [s.rating for s in result.final.values()]
    out = Path(args.out_dir)
    _write(out / "summary.csv", data_io.write_summary(data_io.summary_stats(ratings)))
    provenance = args.provenance
    _write(out / "histogram.svg", svg.histogram_svg(ratings, args.bin_width, "Histogram of ratings", provenance=provenance))
    players = args.players or _default_players(result)
    unknown = [p for p in players if p not in result.trajectories]
    if unknown:
        raise EloTuneError(f"unknown player(s): {', '.join(unknown)}")
    series = {p: result.trajectories[p] for p in players}
    _write(out / "trajectories.svg", svg.line_chart_svg(series, "Rating progression", provenance=provenance))


# --- parser -----------------------------------------------------------------


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON with k, cutoffs, initial_rating, scale")
    p.add_argument("--k", type=_floats, help="K triple, e.g. 60,30,16")
    p.add_argument("--cutoffs", type=_cutoff_arg, help="game cutoffs, e.g. 5,10 or q10,q25")
    _add_elo_flags(p)


def _add_elo_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--initial-rating", type=float, default=1000.0)
    p.add_argument("--scale", type=float, default=400.0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="elotune", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="generate a bot-vs-bot match CSV")
    p.add_argument("--games", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--mcts-iterations", type=int, default=100)
    p.add_argument("--max-turns", type=int, default=24, help="turn cap per player")
    p.add_argument("--transcripts", help="directory for per-game transcript JSON")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("tune", help="grid-search K schedules by test-set F1")
    p.add_argument("--matches", required=True)
    p.add_argument("--grid", help="grid JSON (default: the built-in 4 x 3 grid)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    _add_elo_flags(p)
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("rate", help="replay matches and write final ratings and trajectories")
    p.add_argument("--matches", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--trajectory", help="trajectory CSV path (default: <out>.trajectory.csv)")
    _add_config_flags(p)
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("buckets", help="accuracy and F1 by |rating difference|")
    p.add_argument("--matches", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--edges", type=_floats, default=list(DEFAULT_EDGES))
    _add_config_flags(p)
    p.set_defaults(func=cmd_buckets)

    p = sub.add_parser("report", help="summary statistics CSV plus histogram and trajectory SVGs")
    p.add_argument("--matches", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--players", type=lambda s: s.split(","), help="comma-separated player ids to plot")
    p.add_argument("--bin-width", type=float, default=HISTOGRAM_BIN_WIDTH)
    _add_config_flags(p)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        args.provenance = shlex.join(["elotune", *argv])
        args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EloTuneError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
