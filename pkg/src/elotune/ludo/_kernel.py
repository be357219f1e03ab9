"""Compiled random-playout engine for flat Monte Carlo move evaluation.

State is flattened to ``steps[player * 4 + token]`` plus a dice buffer. The
rule logic mirrors :mod:`elotune.ludo.rules` and the SplitMix64 arithmetic
mirrors :mod:`elotune.rng`; ``tests/test_kernel.py`` cross-checks both
against the pure-Python versions.

Before the playouts for a candidate start, each player's token steps and the
remaining dice are sorted. Tokens are interchangeable under random play, so
this does not change the win probability, but it makes candidates that lead
to the same position share one set of playouts exactly.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S32 = np.uint64(32)

TRACK_END = 57
LAST_LOOP_STEP = 51
LOOP_LENGTH = 52
OFFSET = 26


@njit(cache=True)
def mix64(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@njit(cache=True)
def derive_seed(seed, key):
    return mix64(mix64(seed) + np.uint64(key + 1) * _GAMMA)


@njit(cache=True)
def next_u64(state):
    state[0] = state[0] + _GAMMA
    return mix64(state[0])


@njit(cache=True)
def below(state, n):
    return np.int64(((next_u64(state) >> _S32) * np.uint64(n)) >> _S32)


@njit(cache=True)
def legal(steps, player, dice, nd, out):
    n = 0
    base = player * 4
    for d in range(nd):
        for t in range(4):
            s = steps[base + t]
            if s < TRACK_END and s + dice[d] <= TRACK_END:
                out[n, 0] = d
                out[n, 1] = t
                n += 1
    return n


@njit(cache=True)
def apply(steps, player, dice, nd, d, t, safe):
    """Move token ``t`` by ``dice[d]``, resolve capture, drop the die; returns new die count."""
    dest = steps[player * 4 + t] + dice[d]
    steps[player * 4 + t] = dest
    if 1 <= dest <= LAST_LOOP_STEP:
        sq = (dest + OFFSET * player) % LOOP_LENGTH
        if not safe[sq]:
            opp = 1 - player
            hits = 0
            idx = -1
            for u in range(4):
                s = steps[opp * 4 + u]
                if 1 <= s <= LAST_LOOP_STEP and (s + OFFSET * opp) % LOOP_LENGTH == sq:
                    hits += 1
                    idx = u
            if hits == 1:
                steps[opp * 4 + idx] = 0
    for i in range(d, nd - 1):
        dice[i] = dice[i + 1]
    return nd - 1


@njit(cache=True)
def all_promoted(steps, player):
    for t in range(4):
        if steps[player * 4 + t] != TRACK_END:
            return False
    return True


@njit(cache=True)
def points(steps, player, bonus):
    total = 0
    for t in range(4):
        s = steps[player * 4 + t]
        total += s
        if s == TRACK_END:
            total += bonus
    return total


@njit(cache=True)
def canonicalize(steps, dice, nd):
    for p in range(2):
        seg = np.sort(steps[p * 4 : p * 4 + 4])
        steps[p * 4 : p * 4 + 4] = seg
    if nd > 1:
        dice[:nd] = np.sort(dice[:nd])


@njit(cache=True)
def playout(steps, player, dice, nd, turn, max_turns, safe, bonus, rng):
    """Uniform-random play to the end. Mutates its inputs; returns 0, 1 or -1 (draw)."""
    buf = np.empty((12, 2), dtype=np.int64)
    limit = 2 * max_turns
    while True:
        n = legal(steps, player, dice, nd, buf) if nd > 0 else 0
        if n == 0:
            turn += 1
            if turn >= limit:
                a = points(steps, 0, bonus)
                b = points(steps, 1, bonus)
                if a == b:
                    return -1
                return 0 if a > b else 1
            player = 1 - player
            for i in range(3):
                dice[i] = below(rng, 6) + 1
            nd = 3
            continue
        k = below(rng, n)
        nd = apply(steps, player, dice, nd, buf[k, 0], buf[k, 1], safe)
        if all_promoted(steps, player):
            return player


@njit(cache=True)
def candidate_winrates(steps, player, dice, nd, turn, max_turns, safe, bonus, cands, iterations, base_seed):
    """Win rate of the mover after each candidate move, from ``iterations`` playouts.

    Playout ``j`` of every candidate uses stream ``derive_seed(base_seed, j)``
    (common random numbers across candidates).
    """
    m = cands.shape[0]
    rates = np.zeros(m)
    seen = np.empty((m, 11), dtype=np.int64)
    n_seen = 0
    seen_rate = np.empty(m)
    rng = np.empty(1, dtype=np.uint64)
    s2 = np.empty(8, dtype=np.int64)
    d2 = np.empty(3, dtype=np.int64)
    s3 = np.empty(8, dtype=np.int64)
    d3 = np.empty(3, dtype=np.int64)
    for c in range(m):
        s2[:] = steps
        d2[:] = dice
        nd2 = apply(s2, player, d2, nd, cands[c, 0], cands[c, 1], safe)
        if all_promoted(s2, player):
            rates[c] = 1.0
            continue
        canonicalize(s2, d2, nd2)
        key = np.empty(11, dtype=np.int64)
        key[:8] = s2
        key[8:] = 0
        key[8 : 8 + nd2] = d2[:nd2]
        key[10] = nd2
        found = -1
        for i in range(n_seen):
            same = True
            for j in range(11):
                if seen[i, j] != key[j]:
                    same = False
                    break
            if same:
                found = i
                break
        if found >= 0:
            rates[c] = seen_rate[found]
            continue
        wins = 0
        for j in range(iterations):
            s3[:] = s2
            d3[:] = d2
            rng[0] = derive_seed(base_seed, j)
            if playout(s3, player, d3, nd2, turn, max_turns, safe, bonus, rng) == player:
                wins += 1
        rate = wins / iterations
        seen[n_seen, :] = key
        seen_rate[n_seen] = rate
        n_seen += 1
        rates[c] = rate
    return rates
