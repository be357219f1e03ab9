import pytest

from elotune.ludo import (
    Bot,
    LudoGameState,
    Move,
    StrategyKind,
    apply_move,
    choose_move,
    describe_move,
    legal_moves,
    loop_square,
    rollout_winrate,
)
from elotune.rng import SplitMix64

K = StrategyKind


def p1_step_on(square):
    (s,) = [s for s in range(1, 52) if loop_square(1, s) == square]
    return s


def mine(tokens, theirs=(0, 0, 0, 0), dice=(), turn=0):
    return LudoGameState((tuple(tokens), tuple(theirs)), turn, tuple(dice))


def test_naive_first_die_first_token():
    assert choose_move(K.NAIVE, mine([10, 0, 0, 0], dice=(3, 6, 1)), SplitMix64(0)) == Move(0, 0)


def test_naive_skips_unusable_first_die():
    s = mine([55, 57, 57, 57], dice=(4, 2))
    assert choose_move(K.NAIVE, s, SplitMix64(0)) == Move(1, 0)


def test_no_legal_move_is_pass():
    assert choose_move(K.AGGRESSIVE, mine([57, 57, 57, 56], dice=(3,)), SplitMix64(0)) is None


def test_aggressive_prefers_promotion_over_capture():
    # die 0 captures with token 1 (10 + 3 = 13), die 1 promotes token 0 (52 + 5)
    s = mine([52, 10, 0, 0], [p1_step_on(13), 0, 0, 0], dice=(3, 5))
    assert describe_move(s, Move(0, 1)).captured == 0
    assert choose_move(K.AGGRESSIVE, s, SplitMix64(0)) == Move(1, 0)


def test_aggressive_capture_then_safe():
    s = mine([10, 5, 0, 0], [p1_step_on(13), 0, 0, 0], dice=(3, 4))
    # token 1 + 4 = 9 is safe; token 0 + 3 captures; capture wins
    assert choose_move(K.AGGRESSIVE, s, SplitMix64(0)) == Move(0, 0)
    # without the capture, the first safe landing in legal order is 10 + 4 = 14
    s = mine([10, 5, 0, 0], dice=(3, 4))
    assert choose_move(K.AGGRESSIVE, s, SplitMix64(0)) == Move(1, 0)


def test_aggressive_default_highest_roll():
    s = mine([2, 3, 4, 5], dice=(2, 6, 2))
    # no promotion, capture or safe landing is possible except 3+6=9 (safe)
    assert choose_move(K.AGGRESSIVE, s, SplitMix64(0)) == Move(1, 1)
    s = mine([15, 16, 17, 18], dice=(2, 3, 2))
    assert choose_move(K.AGGRESSIVE, s, SplitMix64(0)) == Move(1, 0)


def test_responsible_pair_moves_lagging_token_of_first_pair():
    # no promotion, capture or safe landing is reachable; token 1 lags its partner
    s = mine([4, 2, 0, 0], dice=(2, 3, 3))
    assert not any(describe_move(s, m).lands_safe() for m in legal_moves(s))
    assert choose_move(K.RESPONSIBLE_PAIR, s, SplitMix64(0)) == Move(1, 1)


def test_responsible_pair_runs_when_opponent_near_home():
    # opponent at step 51 (square 25) cannot be captured with these dice
    s = mine([30, 20, 2, 0], [51, 0, 0, 0], dice=(2, 3, 4))
    move = choose_move(K.RESPONSIBLE_PAIR, s, SplitMix64(0))
    assert move == Move(2, 0)


def test_random_is_uniform_over_legal():
    s = mine([0, 0, 0, 0], dice=(1, 2, 3))
    rng = SplitMix64(9)
    picks = {choose_move(K.RANDOM, s, rng) for _ in range(400)}
    assert picks == set(legal_moves(s))


def test_fi_ds_duality():
    s = mine([20, 5, 33, 0], [p1_step_on(24), 12, 3, 40], dice=(3, 5, 6))
    legal = legal_moves(s)
    rates = rollout_winrate(s, legal, 50, SplitMix64(4))
    fi = choose_move(Bot(K.FULL_INFO, 50), s, SplitMix64(4))
    ds = choose_move(Bot(K.DEFEAT_SEEKING, 50), s, SplitMix64(4))
    assert fi == legal[rates.index(max(rates))]
    assert ds == legal[rates.index(min(rates))]
    assert rates[legal.index(fi)] >= rates[legal.index(ds)]


def test_limited_info_uses_first_usable_die():
    s = mine([55, 20, 57, 57], dice=(6, 1, 2))
    li = choose_move(Bot(K.LIMITED_INFO, 10), s, SplitMix64(0))
    assert li.die_index == 0


def test_terminal_in_one():
    s = mine([57, 57, 57, 52], [10, 10, 10, 10], dice=(5, 1, 1))
    legal = legal_moves(s)
    rates = rollout_winrate(s, legal, 20, SplitMix64(1))
    assert rates[legal.index(Move(0, 3))] == 1.0
    assert choose_move(Bot(K.FULL_INFO, 20), s, SplitMix64(1)) == Move(0, 3)


def test_mirrored_candidates_equal():
    # tokens 0 and 1 are interchangeable, so moving either gives the same position
    s = mine([5, 5, 30, 0], [10, 20, 30, 40], dice=(3, 2))
    rates = rollout_winrate(s, [Move(0, 0), Move(0, 1)], 40, SplitMix64(2))
    assert rates[0] == rates[1]


def test_single_iteration_is_bernoulli():
    s = mine([1, 2, 3, 4], [5, 6, 7, 8], dice=(1, 2, 3))
    for seed in range(5):
        assert set(rollout_winrate(s, legal_moves(s), 1, SplitMix64(seed))) <= {0.0, 1.0}


def test_rollout_is_deterministic():
    s = mine([1, 2, 3, 4], [5, 6, 7, 8], dice=(1, 2, 3))
    legal = legal_moves(s)
    assert rollout_winrate(s, legal, 30, SplitMix64(8)) == rollout_winrate(s, legal, 30, SplitMix64(8))


def test_bot_validation():
    with pytest.raises(ValueError):
        Bot(K.FULL_INFO, 0)
    assert Bot(K.RESPONSIBLE_PAIR).name == "responsible_pair"


@pytest.mark.parametrize("kind", list(StrategyKind))
def test_every_strategy_returns_a_legal_move(kind):
    rng = SplitMix64(0)
    s = mine([3, 14, 40, 54], [p1_step_on(20), 2, 50, 0], dice=(6, 3, 1))
    for _ in range(3):
        move = choose_move(Bot(kind, 5), s, rng)
        assert move in legal_moves(s)
        s = apply_move(s, move)
        if s.turn:
            break


def test_responsible_pair_chases_with_rear_tokens():
    # nothing to promote, capture or land safely on; token 2 can sit 4 squares behind a lone opponent
    s = mine([28, 29, 12, 0], [p1_step_on(20), 0, 0, 0], dice=(4, 3, 3))
    assert choose_move(K.RESPONSIBLE_PAIR, s, SplitMix64(0)) == Move(0, 2)
    # without the target the first pair carries on, lagging token first
    s = mine([28, 29, 12, 0], dice=(4, 3, 3))
    assert choose_move(K.RESPONSIBLE_PAIR, s, SplitMix64(0)) == Move(0, 0)


def test_responsible_pair_second_pair_after_first_promotes():
    s = mine([57, 57, 3, 2], dice=(5, 3))
    assert choose_move(K.RESPONSIBLE_PAIR, s, SplitMix64(0)) == Move(0, 3)
