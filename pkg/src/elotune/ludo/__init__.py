"""Three-dice, two-player Ludo engine, bots and match generator."""

from elotune.ludo.rules import (
    DEFAULT_RULES,
    LudoGameState,
    LudoRules,
    Move,
    MoveRecord,
    TokenState,
    apply_move,
    describe_move,
    is_terminal,
    legal_moves,
    loop_square,
    points,
    start_turn,
    winner,
)
from elotune.ludo.simulate import GameResult, draw_pairing, generate_dataset, play_game
from elotune.ludo.strategies import ALL_KINDS, Bot, StrategyKind, choose_move, rollout_winrate

__all__ = [
    "ALL_KINDS",
    "Bot",
    "DEFAULT_RULES",
    "GameResult",
    "LudoGameState",
    "LudoRules",
    "Move",
    "MoveRecord",
    "StrategyKind",
    "TokenState",
    "apply_move",
    "choose_move",
    "describe_move",
    "draw_pairing",
    "generate_dataset",
    "is_terminal",
    "legal_moves",
    "loop_square",
    "play_game",
    "points",
    "rollout_winrate",
    "start_turn",
    "winner",
]
