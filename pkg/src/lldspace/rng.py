"""SplitMix64 generator with deterministic stream splitting.

Every random choice in the package is drawn from one of these streams so that
a single 64-bit seed reproduces a whole run, including sharded runs.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def _mix_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.seed = int(seed) & _MASK
        self._state = self.seed

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        return _mix(self._state)

    def split(self, index: int) -> "SplitMix64":
        """Independent child stream; depends only on (seed, index)."""
        return SplitMix64(_mix((self.seed ^ _mix((index * _GOLDEN + 1) & _MASK)) & _MASK))

    def u64_array(self, size: int) -> np.ndarray:
        steps = np.arange(1, size + 1, dtype=np.uint64) * np.uint64(_GOLDEN)
        out = _mix_array(steps + np.uint64(self._state))
        self._state = (self._state + size * _GOLDEN) & _MASK
        return out

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def integers(self, bound: int, shape) -> np.ndarray:
        """Array of uniform integers in [0, bound), by rejection sampling."""
        size = int(np.prod(shape, dtype=np.int64))
        if bound <= 0:
            raise ValueError("bound must be positive")
        if bound >= 1 << 63:
            vals = np.array([self.below(bound) for _ in range(size)], dtype=object)
            return vals.reshape(shape)
        limit = np.uint64((1 << 64) - ((1 << 64) % bound)) if (1 << 64) % bound else None
        out = np.empty(size, dtype=np.int64)
        filled = 0
        while filled < size:
            need = size - filled
            raw = self.u64_array(need + need // 8 + 4)
            if limit is not None:
                raw = raw[raw < limit]
            raw = raw[:need]
            out[filled:filled + raw.size] = (raw % np.uint64(bound)).astype(np.int64)
            filled += raw.size
        return out.reshape(shape)
