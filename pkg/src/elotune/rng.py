"""SplitMix64: the single PRNG used everywhere randomness is consumed.

SplitMix64 walks a Weyl sequence (state += golden gamma) and passes each
state through a 64-bit finalizer, so the k-th output is a pure function of
(seed, k). Independent streams are obtained with :func:`derive_seed`, which
hashes a parent seed together with an integer key.

The same arithmetic is mirrored in ``elotune.ludo._kernel`` for compiled
rollouts; both must stay bit-identical.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, key: int) -> int:
    """Seed of child stream ``key`` of ``seed``."""
    return mix64(mix64(seed) + (key + 1) * GOLDEN_GAMMA)


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` for ``0 < n < 2**32``."""
        return ((self.next_u64() >> 32) * n) >> 32

    def roll_die(self) -> int:
        return self.below(6) + 1

    def coin(self) -> bool:
        return (self.next_u64() >> 63) == 1

    def split(self, key: int) -> SplitMix64:
        return SplitMix64(derive_seed(self.state, key))
