"""Deterministic 64-bit RNG for corpus generation.

SplitMix64 (finalizer constants 0xBF58476D1CE4E5B9, 0x94D049BB133111EB,
increment 0x9E3779B97F4A7C15).  Chosen over stdlib random so any
implementation in any language reproduces identical corpora; per-page
substreams are seeded with seed XOR page-index.
"""

from __future__ import annotations

MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits."""
        return (self.next_u64() >> 11) * (2.0**-53)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        return lo + self.next_u64() % (hi - lo + 1)

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def chance(self, p: float) -> bool:
        return self.random() < p

    def choice(self, seq):
        return seq[self.next_u64() % len(seq)]

    def shuffle(self, seq: list):
        for i in range(len(seq) - 1, 0, -1):
            j = self.next_u64() % (i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def substream(self, index: int) -> "SplitMix64":
        return SplitMix64(self.state ^ index)


def page_rng(seed: int, page_index: int) -> SplitMix64:
    return SplitMix64((seed ^ page_index) & MASK)
