"""Deterministic, splittable random streams.

A ``Stream`` is a xoshiro256** generator seeded through SplitMix64.
Substreams are derived from a (master seed, index) pair, so a run that
hands trial i to any worker always draws the same values for trial i.
All arithmetic is fixed 64-bit, independent of platform and interpreter.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    # SplitMix64 finalizer (Steele/Lea/Flood 2014).
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


class Stream:
    """xoshiro256** stream with unbiased bounded draws."""

    __slots__ = ("_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int):
        sm = seed & _MASK
        state = []
        for _ in range(4):
            sm = (sm + _GOLDEN) & _MASK
            state.append(_mix64(sm))
        self._s0, self._s1, self._s2, self._s3 = state

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        result = _rotl(s1 * 5 & _MASK, 7) * 9 & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound), by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = (1 << 64) - ((1 << 64) % bound)
        while True:
            u = self.next_u64()
            if u < threshold:
                return u % bound

    def integers(self, bound: int, count: int) -> list[int]:
        """``count`` uniform draws in [0, bound)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = (1 << 64) - ((1 << 64) % bound)
        out = []
        nxt = self.next_u64
        while len(out) < count:
            u = nxt()
            if u < threshold:
                out.append(u % bound)
        return out


def derive_seed(master_seed: int, index: int) -> int:
    """Child seed for item ``index``; distinct indices never collide."""
    return (_mix64(master_seed & _MASK) + index * _GOLDEN) & _MASK


def substream(master_seed: int, index: int) -> Stream:
    """Stream for item ``index`` under ``master_seed``.

    Distinct indices give distinct SplitMix64 starting points, so
    substreams never alias for a fixed master seed.
    """
    return Stream(derive_seed(master_seed, index))
