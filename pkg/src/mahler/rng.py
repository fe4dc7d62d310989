"""Portable seeded randomness based on splitmix64.

All Monte Carlo sampling and random arc placement in this package goes
through this generator so that serialized outputs are byte-identical
across platforms for a fixed seed.
"""

from __future__ import annotations

import numpy as np

_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_TWO64 = float(2**64)


class SplitMix64:
    """splitmix64 stream; yields uint64 words, floats in [0,1), and sign vectors."""

    def __init__(self, seed: int):
        self._state = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)

    def next_uint64(self) -> int:
        with np.errstate(over="ignore"):
            self._state = (self._state + _GAMMA) & _MASK
            z = self._state
            z = ((z ^ (z >> np.uint64(30))) * _M1) & _MASK
            z = ((z ^ (z >> np.uint64(27))) * _M2) & _MASK
            z = z ^ (z >> np.uint64(31))
        return int(z)

    def uint64_array(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint64)
        for i in range(count):
            out[i] = self.next_uint64()
        return out

    def random(self) -> float:
        # 53-bit mantissa, same construction as xoshiro-family double output
        return (self.next_uint64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def signs(self, count: int) -> np.ndarray:
        """Vector of ``count`` values in {-1, +1}, 64 bits consumed per word."""
        words = self.uint64_array((count + 63) // 64)
        bits = np.unpackbits(words.view(np.uint8), bitorder="little")
        return (2 * bits[:count].astype(np.int8) - 1).astype(np.int8)

    def sign_matrix(self, rows: int, cols: int) -> np.ndarray:
        """Matrix of ±1 entries drawn row-major from the stream."""
        flat = self.signs(rows * cols)
        return flat.reshape(rows, cols)
