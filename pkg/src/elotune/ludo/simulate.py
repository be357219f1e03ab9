"""Seeded bot-vs-bot games and match-log generation."""

from __future__ import annotations

import itertools
import json
from concurrent.futures import Executor
from dataclasses import dataclass, field
from typing import Sequence

from elotune.data_io import MatchRecord
from elotune.ludo.rules import (
    DEFAULT_RULES,
    LudoGameState,
    LudoRules,
    MoveRecord,
    apply_move,
    describe_move,
    is_terminal,
    legal_moves,
    points,
    winner,
)
from elotune.ludo.strategies import ALL_KINDS, Bot, StrategyKind, choose_move
from elotune.rating import MatchOutcome
from elotune.rng import SplitMix64, derive_seed

# child-stream keys of a game seed
DICE_STREAM = 0
PLAYER_STREAMS = (1, 2)
# child-stream keys of a master seed for game i: i itself


@dataclass
class GameResult:
    winner: MatchOutcome
    final_points: tuple[int, int]
    turns_used: int
    transcript: list[MoveRecord] = field(repr=False)

    def transcript_json(self) -> str:
        return json.dumps([m.to_json() for m in self.transcript], separators=(",", ":"))


def _as_bot(b: Bot | StrategyKind, mcts_iterations: int | None = None) -> Bot:
    if isinstance(b, Bot):
        return b
    return Bot(b) if mcts_iterations is None else Bot(b, mcts_iterations)


def _record_passes(records: list[MoveRecord], state: LudoGameState, dice: Sequence[int]) -> None:
    for die in dice:
        records.append(MoveRecord(state.turn, state.player, die, None, None, None, None))


def play_game(
    bot_1: Bot | StrategyKind,
    bot_2: Bot | StrategyKind,
    rules: LudoRules = DEFAULT_RULES,
    seed: int = 0,
) -> GameResult:
    """Play one game; player 1 (index 0) moves first.

    Dice come from one child stream of ``seed`` and each bot draws its own
    decisions from another, so a bot's random consumption never shifts the
    dice sequence.
    """
    bots = (_as_bot(bot_1), _as_bot(bot_2))
    dice_rng = SplitMix64(derive_seed(seed, DICE_STREAM))
    bot_rngs = tuple(SplitMix64(derive_seed(seed, k)) for k in PLAYER_STREAMS)
    state = LudoGameState()
    transcript: list[MoveRecord] = []

    while not is_terminal(state, rules):
        if not state.dice:
            rolled = tuple(dice_rng.roll_die() for _ in range(rules.dice_per_turn))
            state = LudoGameState(state.tokens, state.turn, rolled)
            if not legal_moves(state):
                _record_passes(transcript, state, rolled)
                state = LudoGameState(state.tokens, state.turn + 1, ())
            continue
        player = state.player
        move = choose_move(bots[player], state, bot_rngs[player], rules)
        if move is None:
            _record_passes(transcript, state, state.dice)
            state = LudoGameState(state.tokens, state.turn + 1, ())
            continue
        effect = describe_move(state, move, rules)
        transcript.append(
            MoveRecord(state.turn, player, effect.die, move.token, effect.from_step, effect.to_step, effect.captured)
        )
        leftover = state.dice[: move.die_index] + state.dice[move.die_index + 1 :]
        new = apply_move(state, move, rules)
        if new.turn != state.turn and leftover:
            # remaining dice had no legal use and are forfeited
            _record_passes(transcript, LudoGameState(new.tokens, state.turn, leftover), leftover)
        state = new

    w = winner(state, rules)
    outcome = MatchOutcome.DRAW if w is None else (MatchOutcome.WIN_P1 if w == 0 else MatchOutcome.WIN_P2)
    return GameResult(
        winner=outcome,
        final_points=(points(state, 0, rules), points(state, 1, rules)),
        turns_used=state.turn,
        transcript=transcript,
    )


def draw_pairing(master_seed: int, game_index: int, n_bots: int = 7) -> tuple[int, int, int]:
    """(first, second, game_seed) for game ``game_index``.

    An unordered pair is drawn uniformly, then its order is randomised.
    """
    rng = SplitMix64(derive_seed(master_seed, game_index))
    pairs = list(itertools.combinations(range(n_bots), 2))
    a, b = pairs[rng.below(len(pairs))]
    if rng.coin():
        a, b = b, a
    return a, b, rng.next_u64()


def game_id(index: int) -> str:
    return f"g{index:07d}"


def _play_indexed(args) -> tuple[MatchRecord, GameResult]:
    bots, rules, master_seed, i = args
    a, b, game_seed = draw_pairing(master_seed, i, len(bots))
    result = play_game(bots[a], bots[b], rules, game_seed)
    record = MatchRecord(game_id(i), i, bots[a].name, bots[b].name, result.winner)
    return record, result


def generate_dataset(
    kinds: Sequence[Bot | StrategyKind] = ALL_KINDS,
    n_games: int = 2100,
    master_seed: int = 0,
    rules: LudoRules = DEFAULT_RULES,
    mcts_iterations: int | None = None,
    executor: Executor | None = None,
    keep_results: bool = False,
) -> list[MatchRecord] | tuple[list[MatchRecord], list[GameResult]]:
    """Simulate ``n_games`` randomly paired games between the given bots.

    Game ``i`` gets id ``g{i:07d}`` and timestamp ``i``. Output order is game
    order whatever the executor does. ``mcts_iterations`` overrides the
    budget of bare :class:`StrategyKind` entries.
    """
    if n_games < 1:
        raise ValueError("n_games must be >= 1")
    bots = [_as_bot(k, mcts_iterations) for k in kinds]
    if len({b.name for b in bots}) != len(bots):
        raise ValueError("bot names must be distinct")
    if len(bots) < 2:
        raise ValueError("need at least two bots")
    jobs = [(bots, rules, master_seed, i) for i in range(n_games)]
    mapper = executor.map if executor is not None else map
    records, results = [], []
    for record, result in mapper(_play_indexed, jobs):
        records.append(record)
        if keep_results:
            results.append(result)
    return (records, results) if keep_results else records
