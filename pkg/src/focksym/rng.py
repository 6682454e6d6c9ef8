"""Deterministic seeded sampling for reproducible verification runs.

A splitmix64 stream drives all randomness: the same 64-bit seed produces the
same vectors on every platform, independent of numpy's generator internals.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["SplitMix64", "complex_normal_vectors"]

_MASK = (1 << 64) - 1


class SplitMix64:
    """64-bit splitmix stream; uniform doubles in [0, 1)."""

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK

    def next_uint64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def uniform(self) -> float:
        return (self.next_uint64() >> 11) * (1.0 / (1 << 53))

    def standard_normal(self) -> float:
        # Box-Muller; one value per call keeps the stream layout simple.
        u1 = self.uniform()
        while u1 == 0.0:
            u1 = self.uniform()
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def complex_normal_vectors(seed: int, count: int, dim: int) -> np.ndarray:
    """(count, dim) array of standard complex Gaussian samples."""
    rng = SplitMix64(seed)
    out = np.empty((count, dim), dtype=complex)
    for i in range(count):
        for j in range(dim):
            out[i, j] = complex(rng.standard_normal(), rng.standard_normal()) / math.sqrt(2)
    return out
