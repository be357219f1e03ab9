"""The seven bot strategies.

Rule-based: NAIVE, AGGRESSIVE, RESPONSIBLE_PAIR. Rollout-based: FULL_INFO,
LIMITED_INFO, DEFEAT_SEEKING (flat Monte Carlo: every candidate move is
followed by ``mcts_iterations`` uniform-random playouts). RANDOM picks a
legal move uniformly.

Within any priority class, ties go to the first move in
:func:`~elotune.ludo.rules.legal_moves` order (die index, then token).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from elotune.ludo import _kernel
from elotune.ludo.rules import (
    DEFAULT_RULES,
    LAST_LOOP_STEP,
    TRACK_END,
    LudoGameState,
    LudoRules,
    Move,
    MoveEffect,
    describe_move,
    legal_moves,
    loop_square,
)
from elotune.rng import SplitMix64

PAIR_TARGET = 27  # opponent's loop entry
DANGER_STEP = 50  # opponent token this far along is close to promotion
CHASE_REACH = 6  # chase only an opponent a single die can reach next turn


class StrategyKind(Enum):
    NAIVE = "naive"
    AGGRESSIVE = "aggressive"
    RESPONSIBLE_PAIR = "responsible_pair"
    FULL_INFO = "full_information"
    LIMITED_INFO = "limited_information"
    DEFEAT_SEEKING = "defeat_seeking"
    RANDOM = "random"

    @property
    def uses_rollouts(self) -> bool:
        return self in (StrategyKind.FULL_INFO, StrategyKind.LIMITED_INFO, StrategyKind.DEFEAT_SEEKING)


@dataclass(frozen=True)
class Bot:
    kind: StrategyKind
    mcts_iterations: int = 100

    def __post_init__(self) -> None:
        if self.mcts_iterations < 1:
            raise ValueError("mcts_iterations must be >= 1")

    @property
    def name(self) -> str:
        return self.kind.value


ALL_KINDS = tuple(StrategyKind)


def _safe_mask(rules: LudoRules) -> np.ndarray:
    mask = np.zeros(rules.loop_length, dtype=np.bool_)
    for sq in rules.safe_squares:
        mask[sq] = True
    return mask


def rollout_winrate(
    state: LudoGameState,
    candidates: Sequence[Move],
    iterations: int,
    rng: SplitMix64,
    rules: LudoRules = DEFAULT_RULES,
) -> list[float]:
    """Fraction of random playouts the mover wins after each candidate.

    Draws one 64-bit base seed from ``rng``; playout ``j`` of every candidate
    then runs on the same derived stream, so equal positions get equal rates.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if not candidates:
        return []
    base = rng.next_u64()
    steps = np.array(state.tokens[0] + state.tokens[1], dtype=np.int64)
    dice = np.zeros(3, dtype=np.int64)
    dice[: len(state.dice)] = state.dice
    cands = np.array(candidates, dtype=np.int64).reshape(-1, 2)
    rates = _kernel.candidate_winrates(
        steps,
        state.player,
        dice,
        len(state.dice),
        state.turn,
        rules.max_turns_per_player,
        _safe_mask(rules),
        rules.promotion_bonus,
        cands,
        iterations,
        np.uint64(base),
    )
    return rates.tolist()


def _argbest(moves: Sequence[Move], rates: Sequence[float], pick: Callable) -> Move:
    target = pick(rates)
    return moves[rates.index(target)]


# --- rule-based helpers -------------------------------------------------------


def _effects(state: LudoGameState, moves: Sequence[Move], rules: LudoRules) -> list[tuple[Move, MoveEffect]]:
    return [(m, describe_move(state, m, rules)) for m in moves]


def _first(pairs, predicate) -> Move | None:
    for move, eff in pairs:
        if predicate(move, eff):
            return move
    return None


def _dice_high_to_low(state: LudoGameState) -> list[int]:
    return sorted(range(len(state.dice)), key=lambda d: (-state.dice[d], d))


def _token_with_highest_die(state: LudoGameState, legal: Sequence[Move], tokens: Sequence[int]) -> Move | None:
    """Highest legal die for the first token in ``tokens`` that can move at all."""
    legal_set = set(legal)
    for t in tokens:
        for d in _dice_high_to_low(state):
            if Move(d, t) in legal_set:
                return Move(d, t)
    return None


def _first_token_highest_roll(state: LudoGameState, legal: Sequence[Move]) -> Move:
    legal_set = set(legal)
    for d in _dice_high_to_low(state):
        for t in range(4):
            if Move(d, t) in legal_set:
                return Move(d, t)
    return legal[0]


def _naive(state, legal, rules, rng) -> Move:
    return legal[0]


def _random(state, legal, rules, rng) -> Move:
    return legal[rng.below(len(legal))]


def _aggressive(state, legal, rules, rng) -> Move:
    pairs = _effects(state, legal, rules)
    return (
        _first(pairs, lambda m, e: e.promotes)
        or _first(pairs, lambda m, e: e.captured is not None)
        or _first(pairs, lambda m, e: e.lands_safe(rules))
        or _first_token_highest_roll(state, legal)
    )


def _chase_move(state: LudoGameState, pairs, rules: LudoRules) -> Move | None:
    """Rear-pair move ending closest behind a lone, unsafe opponent token."""
    player = state.player
    opponent = 1 - player
    targets = []
    for s in state.tokens[opponent]:
        sq = loop_square(opponent, s)
        if sq is not None and sq not in rules.safe_squares:
            targets.append(sq)
    best, best_gap = None, None
    for move, eff in pairs:
        if move.token not in (2, 3) or eff.square is None:
            continue
        for sq in targets:
            gap = (sq - eff.square) % rules.loop_length
            # only squares the chaser will still pass over on its own path
            if 1 <= gap <= CHASE_REACH and eff.to_step + gap <= LAST_LOOP_STEP:
                if best_gap is None or gap < best_gap:
                    best, best_gap = move, gap
    return best


def _pair_move(state: LudoGameState, legal: Sequence[Move]) -> Move | None:
    """Pair play: (token 0, token 1) first, then (token 2, token 3).

    The active pair is the first one not fully promoted. Its two tokens take
    turns, realised as "move the lagging token", first up to step 27 and then
    on to promotion, always with the highest die that token can use.
    """
    mine = state.tokens[state.player]
    for pair in ((0, 1), (2, 3)):
        if all(mine[t] == TRACK_END for t in pair):
            continue
        if any(mine[t] < PAIR_TARGET for t in pair):
            movers = [t for t in pair if mine[t] < PAIR_TARGET]
        else:
            movers = [t for t in pair if mine[t] < TRACK_END]
        move = _token_with_highest_die(state, legal, sorted(movers, key=lambda t: (mine[t], t)))
        if move is not None:
            return move
    return None


def _responsible_pair(state, legal, rules, rng) -> Move:
    pairs = _effects(state, legal, rules)
    move = _first(pairs, lambda m, e: e.promotes) or _first(pairs, lambda m, e: e.captured is not None)
    if move:
        return move
    mine = state.tokens[state.player]
    if any(s >= DANGER_STEP and s < TRACK_END for s in state.tokens[1 - state.player]):
        by_points = sorted(range(4), key=lambda t: (-mine[t], t))
        move = _token_with_highest_die(state, legal, by_points)
        if move:
            return move
    move = _first(pairs, lambda m, e: e.lands_safe(rules)) or _chase_move(state, pairs, rules)
    if move:
        return move
    return _pair_move(state, legal) or _first_token_highest_roll(state, legal)


def _rollout_choice(kind: StrategyKind):
    def choose(state, legal, rules, rng, iterations) -> Move:
        if kind is StrategyKind.LIMITED_INFO:
            first_die = legal[0].die_index
            candidates = [m for m in legal if m.die_index == first_die]
        else:
            candidates = list(legal)
        rates = rollout_winrate(state, candidates, iterations, rng, rules)
        pick = min if kind is StrategyKind.DEFEAT_SEEKING else max
        return _argbest(candidates, rates, pick)

    return choose


_RULE_BASED = {
    StrategyKind.NAIVE: _naive,
    StrategyKind.AGGRESSIVE: _aggressive,
    StrategyKind.RESPONSIBLE_PAIR: _responsible_pair,
    StrategyKind.RANDOM: _random,
}
_ROLLOUT_BASED = {k: _rollout_choice(k) for k in StrategyKind if k.uses_rollouts}


def choose_move(
    bot: Bot | StrategyKind,
    state: LudoGameState,
    rng: SplitMix64,
    rules: LudoRules = DEFAULT_RULES,
) -> Move | None:
    """The bot's move for the current position, or None when it must pass."""
    if isinstance(bot, StrategyKind):
        bot = Bot(bot)
    legal = legal_moves(state)
    if not legal:
        return None
    if bot.kind.uses_rollouts:
        return _ROLLOUT_BASED[bot.kind](state, legal, rules, rng, bot.mcts_iterations)
    return _RULE_BASED[bot.kind](state, legal, rules, rng)
