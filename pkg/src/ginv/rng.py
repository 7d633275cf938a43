"""Deterministic pseudo-random number generation.

Every fuzz trial derives its own generator from (seed, trial index,
slot index) through splitmix64, so results are reproducible across
runs and independent of scheduling order.
"""

MASK64 = (1 << 64) - 1


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state; returns (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def mix_key(*parts: int) -> int:
    """Fold integers into a single 64-bit key, one splitmix step per part."""
    state = 0
    for part in parts:
        state, out = splitmix64((state ^ (part & MASK64)) & MASK64)
        state = out
    return state


class Rng:
    """Small deterministic RNG backed by splitmix64."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next64(self) -> int:
        self._state, out = splitmix64(self._state)
        return out

    def below(self, n: int) -> int:
        """Uniform integer in [0, n). n must be positive."""
        if n <= 0:
            raise ValueError("bound must be positive")
        # Rejection sampling keeps the distribution exactly uniform.
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next64()
            if x < limit:
                return x % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]


def trial_rng(seed: int, trial: int, slot: int = 0) -> Rng:
    """The canonical per-trial generator: splitmix64 keyed on all indices."""
    return Rng(mix_key(seed, trial, slot))
