"""Two-player, three-dice Ludo.

Board geometry
--------------
Each player owns a linear path of 57 steps. Step 0 is the start area, steps
1..51 lie on a shared 52-square loop, steps 52..56 are a private home column
and step 57 is promotion. Player ``p`` at loop step ``s`` occupies absolute
square ``(s + 26 * p) % 52``, so the players enter the loop on opposite sides
(squares 1 and 27).

Turn structure
--------------
Three dice are rolled at the start of a turn and spent one at a time in any
order. A die moves one unpromoted token exactly its value; overshooting 57
is illegal. The turn ends when the dice run out or none of the remaining
dice can move any token. All four tokens may move from the start; there is
no six-to-enter rule and no bonus turn.

A token that lands on a non-safe loop square holding exactly one opponent
token sends that token back to step 0. Two opponent tokens on one square
form a block and are left alone.

Scoring
-------
A token scores the number of steps it has travelled; a promoted token adds a
56-point bonus. Promoting all four tokens wins outright. Otherwise the game
stops after both players have used ``max_turns_per_player`` turns and the
higher point total wins; equal totals draw.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import NamedTuple

from elotune.errors import RuleViolation

N_PLAYERS = 2
N_TOKENS = 4
DICE_PER_TURN = 3
TRACK_END = 57
LAST_LOOP_STEP = 51
LOOP_LENGTH = 52
OPPONENT_OFFSET = 26
DEFAULT_SAFE_SQUARES = frozenset({1, 9, 14, 22, 27, 35, 40, 48})


@dataclass(frozen=True)
class LudoRules:
    max_turns_per_player: int = 24
    safe_squares: frozenset[int] = DEFAULT_SAFE_SQUARES
    promotion_bonus: int = 56

    track_length = TRACK_END
    dice_per_turn = DICE_PER_TURN
    loop_length = LOOP_LENGTH
    opponent_offset = OPPONENT_OFFSET

    def __post_init__(self) -> None:
        if self.max_turns_per_player < 0:
            raise ValueError("max_turns_per_player must be non-negative")
        if any(not 0 <= sq < LOOP_LENGTH for sq in self.safe_squares):
            raise ValueError("safe squares must lie on the loop")


DEFAULT_RULES = LudoRules()


class Move(NamedTuple):
    die_index: int
    token: int


class TokenState(NamedTuple):
    step: int
    points: int

    @property
    def promoted(self) -> bool:
        return self.step == TRACK_END


class MoveEffect(NamedTuple):
    die: int
    from_step: int
    to_step: int
    captured: int | None  # opponent token index sent home
    promotes: bool
    square: int | None  # absolute loop square of the destination

    def lands_safe(self, rules: LudoRules = DEFAULT_RULES) -> bool:
        return self.square is not None and self.square in rules.safe_squares


@dataclass(frozen=True)
class MoveRecord:
    turn: int
    player: int
    die: int
    token: int | None  # None for a forfeited die
    from_step: int | None
    to_step: int | None
    captured: int | None

    def to_json(self) -> dict:
        return {
            "turn": self.turn,
            "player": self.player,
            "die": self.die,
            "token": self.token,
            "from": self.from_step,
            "to": self.to_step,
            "captured": self.captured,
        }


Tokens = tuple[tuple[int, int, int, int], tuple[int, int, int, int]]


@dataclass(frozen=True)
class LudoGameState:
    tokens: Tokens = ((0, 0, 0, 0), (0, 0, 0, 0))
    turn: int = 0  # completed turns
    dice: tuple[int, ...] = field(default=())

    @property
    def player(self) -> int:
        return self.turn % N_PLAYERS

    def token(self, player: int, index: int, rules: LudoRules = DEFAULT_RULES) -> TokenState:
        step = self.tokens[player][index]
        return TokenState(step, token_points(step, rules))


def loop_square(player: int, step: int) -> int | None:
    if 1 <= step <= LAST_LOOP_STEP:
        return (step + OPPONENT_OFFSET * player) % LOOP_LENGTH
    return None


def token_points(step: int, rules: LudoRules = DEFAULT_RULES) -> int:
    return step + (rules.promotion_bonus if step == TRACK_END else 0)


def points(state: LudoGameState, player: int, rules: LudoRules = DEFAULT_RULES) -> int:
    return sum(token_points(s, rules) for s in state.tokens[player])


def all_promoted(state: LudoGameState, player: int) -> bool:
    return all(s == TRACK_END for s in state.tokens[player])


def is_terminal(state: LudoGameState, rules: LudoRules = DEFAULT_RULES) -> bool:
    return (
        all_promoted(state, 0)
        or all_promoted(state, 1)
        or state.turn >= N_PLAYERS * rules.max_turns_per_player
    )


def winner(state: LudoGameState, rules: LudoRules = DEFAULT_RULES) -> int | None:
    """0 or 1 for a decided game, None for a draw. Only meaningful when terminal."""
    for p in range(N_PLAYERS):
        if all_promoted(state, p):
            return p
    a, b = points(state, 0, rules), points(state, 1, rules)
    if a == b:
        return None
    return 0 if a > b else 1


def legal_moves(state: LudoGameState) -> list[Move]:
    """Legal (die_index, token) pairs, ordered by die index then token."""
    mine = state.tokens[state.player]
    return [
        Move(d, t)
        for d, die in enumerate(state.dice)
        for t, step in enumerate(mine)
        if step < TRACK_END and step + die <= TRACK_END
    ]


def describe_move(state: LudoGameState, move: Move, rules: LudoRules = DEFAULT_RULES) -> MoveEffect:
    player = state.player
    die = state.dice[move.die_index]
    start = state.tokens[player][move.token]
    dest = start + die
    square = loop_square(player, dest)
    captured = None
    if square is not None and square not in rules.safe_squares:
        opponent = 1 - player
        hits = [u for u, s in enumerate(state.tokens[opponent]) if loop_square(opponent, s) == square]
        if len(hits) == 1:
            captured = hits[0]
    return MoveEffect(die, start, dest, captured, dest == TRACK_END, square)


def _end_turn(state: LudoGameState) -> LudoGameState:
    return replace(state, turn=state.turn + 1, dice=())


def apply_move(state: LudoGameState, move: Move, rules: LudoRules = DEFAULT_RULES) -> LudoGameState:
    """Spend one die on one token.

    If that exhausts the dice or leaves no legal move the turn passes: the
    returned state has ``turn`` advanced and no dice in hand.
    """
    if not (0 <= move.die_index < len(state.dice) and 0 <= move.token < N_TOKENS):
        raise RuleViolation(f"move {tuple(move)} out of range for dice {state.dice}")
    effect = describe_move(state, move, rules)
    if effect.from_step == TRACK_END or effect.to_step > TRACK_END:
        raise RuleViolation(f"illegal move {tuple(move)}: step {effect.from_step} + die {effect.die}")
    player = state.player
    tokens = [list(state.tokens[0]), list(state.tokens[1])]
    tokens[player][move.token] = effect.to_step
    if effect.captured is not None:
        tokens[1 - player][effect.captured] = 0
    dice = state.dice[: move.die_index] + state.dice[move.die_index + 1 :]
    new = LudoGameState((tuple(tokens[0]), tuple(tokens[1])), state.turn, dice)
    if all_promoted(new, player):
        return new
    if not dice or not legal_moves(new):
        return _end_turn(new)
    return new


def start_turn(state: LudoGameState, dice: tuple[int, ...]) -> LudoGameState:
    """Put freshly rolled dice in hand; skips the turn when none can be used."""
    new = replace(state, dice=tuple(dice))
    return new if legal_moves(new) else _end_turn(new)
