"""Deterministic 64-bit generator (splitmix64) for portable fuzz corpora.

The exact update, documented so corpora can be reproduced outside Python:

    state  = (state + 0x9E3779B97F4A7C15) mod 2^64
    z      = state
    z      = ((z xor (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z      = ((z xor (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output = z xor (z >> 31)

Derived draws are defined on top of the raw stream (see docs/format.md):
`randrange(n)` is `next_u64() % n`, `randint(a, b)` is `a + randrange(b-a+1)`,
`choice(seq)` is `seq[randrange(len(seq))]`.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        return self.next_u64() % n

    def randint(self, a: int, b: int) -> int:
        """Uniform-ish integer in [a, b], inclusive."""
        if b < a:
            raise ValueError("empty range")
        return a + self.randrange(b - a + 1)

    def choice(self, seq):
        if not seq:
            raise ValueError("choice from empty sequence")
        return seq[self.randrange(len(seq))]

    def fork(self) -> "SplitMix64":
        """Child stream seeded from this one; decouples consumers."""
        return SplitMix64(self.next_u64())
