"""SplitMix64 deterministic random number generator.

Key generation, the inversion experiments, and the signature demo all draw
from this single generator so that every run is reproducible from a 64-bit
seed alone, independent of platform and backend.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """The splitmix64 sequence: state walks by a fixed odd gamma and each
    output is a finalizing mix of the new state."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = int(seed) & MASK64

    @property
    def state(self) -> int:
        return self._state

    def next_u64(self) -> int:
        self._state = (self._state + GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return (z ^ (z >> 31)) & MASK64

    def next_below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection sampling.

        Draws are discarded while they land in the short final partial block
        of the 64-bit range, so every residue is exactly equally likely.
        """
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        if bound == 1:
            return 0
        limit = MASK64 - (MASK64 + 1) % bound
        while True:
            r = self.next_u64()
            if r <= limit:
                return r % bound

    def sample_subset(self, n: int, k: int) -> tuple[int, ...]:
        """Uniform k-subset of {1, ..., n}, returned sorted.

        Partial Fisher-Yates: k swap steps over an index table, consuming
        exactly k bounded draws.
        """
        if not 0 <= k <= n:
            raise ValueError(f"cannot choose {k} of {n}")
        pool = list(range(1, n + 1))
        for i in range(k):
            j = i + self.next_below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return tuple(sorted(pool[:k]))

    def derive_child_seed(self) -> int:
        return self.next_u64()
