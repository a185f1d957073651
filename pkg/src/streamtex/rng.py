"""Deterministic pseudo-random primitives for noise, droplets, and tones.

The package owns its generator (SplitMix64) instead of delegating to
numpy's Generator API so that rendered images stay byte-identical across
numpy versions and platforms. The counter form makes the stream
vectorizable: output i of a stream seeded with s is mix64(s + i*GAMMA),
so a block of outputs can be produced with array arithmetic and agrees
exactly with sequential draws.
"""

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1DCE4E91
_MIX2 = 0x94D4A769914F85D5
_FNV_PRIME = 0x100000001B3


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Sequential SplitMix64 stream over pure Python integers."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return mix64(self._state)

    def next_tone(self) -> int:
        """Uniform gray tone in [0, 255] (top 8 bits of the draw)."""
        return self.next_u64() >> 56

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n) by 53-bit multiply-shift."""
        return ((self.next_u64() >> 11) * n) >> 53


def u64_block(seed: int, count: int) -> np.ndarray:
    """First `count` outputs of SplitMix64(seed), vectorized.

    Bit-identical to calling SplitMix64(seed).next_u64() `count` times.
    """
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = np.uint64(seed & _MASK64) + idx * np.uint64(_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def derive_seed(master: int, label: str) -> int:
    """Derive a labeled sub-seed from a master seed (FNV-1a fold + mix).

    One master seed controls every random stream in a render job; each
    stream gets its own label so the streams are decorrelated.
    """
    h = master & _MASK64
    for b in label.encode("utf-8"):
        h = ((h ^ b) * _FNV_PRIME) & _MASK64
    return mix64(h)
