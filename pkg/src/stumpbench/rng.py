"""Portable 64-bit random generator used for every seeded decision.

All shuffling, fold dealing and bootstrap resampling in this package flows
through the generators below so that runs are reproducible bit-for-bit and
other implementations can replay them from the documented constants alone.

The stream is xoshiro256** seeded from splitmix64, exactly as published at
https://prng.di.unimi.it/ :

* splitmix64: state advances by 0x9E3779B97F4A7C15; output is the state
  scrambled by two multiply-xorshift rounds (0xBF58476D1CE4E5B9 with shift
  30, 0x94D049BB133111EB with shift 27) and a final shift of 31.
* xoshiro256**: 4-word state filled with four consecutive splitmix64
  outputs; each step returns rotl(s1 * 5, 7) * 9 and updates the state with
  the standard shift/rotate network (shift 17, rotate 45).
* bounded draws use rejection sampling (draw 64 bits until below the
  largest multiple of n), so `below(n)` is exactly uniform.
* shuffling is a Fisher-Yates pass from the last index down to 1.
* independent substreams derive a child seed as
  mix64((mix64(seed) + index + 1) mod 2^64), where mix64 is the splitmix64
  output scramble.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """splitmix64 output scramble of a 64-bit value."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """The splitmix64 generator; used only to seed the main generator."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return mix64(self._state)


class Xoshiro256StarStar:
    """xoshiro256** with splitmix64 seeding."""

    def __init__(self, seed: int):
        sm = SplitMix64(seed)
        self._s = [sm.next_u64() for _ in range(4)]

    def next_u64(self) -> int:
        s = self._s
        x = (s[1] * 5) & _MASK64
        result = (((x << 7) | (x >> 57)) & _MASK64) * 9 & _MASK64
        t = (s[1] << 17) & _MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = ((s[3] << 45) | (s[3] >> 19)) & _MASK64
        return result

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection sampling (no modulo bias)."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = _MASK64 + 1 - ((_MASK64 + 1) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def indices(self, n: int, count: int) -> list[int]:
        """`count` independent uniform draws from [0, n)."""
        return [self.below(n) for _ in range(count)]


def substream(seed: int, index: int) -> Xoshiro256StarStar:
    """Generator for the `index`-th substream of `seed`.

    Child streams are independent of evaluation order, so work items
    (bootstrap resamples, per-classifier bands) can be computed in any
    order or in parallel without changing results.
    """
    if index < 0:
        raise ValueError("substream index must be non-negative")
    return Xoshiro256StarStar(mix64((mix64(seed) + index + 1) & _MASK64))
