"""Deterministic, labeled random streams.

Every randomized operation in the simulator draws from an explicit
:class:`RandomStream`.  Streams are derived from a 32-byte master seed by
hashing in string labels, so independent roles (sender, receiver, adversary,
setup) never share randomness and identical seeds replay identical runs.
"""

from __future__ import annotations

import hashlib

import numpy as np


def _derive_key(key: bytes, label: str) -> bytes:
    return hashlib.sha256(b"eprot-stream|" + key + b"|" + label.encode()).digest()


class RandomStream:
    """A seeded random source with keyed child derivation.

    The stream wraps ``numpy.random.Generator`` for floats and bit arrays and
    adds exact big-integer sampling (rejection, no modulo bias) for group
    exponents and hash offsets.
    """

    def __init__(self, key: bytes):
        if len(key) != 32:
            raise ValueError("stream key must be 32 bytes")
        self.key = key
        self._gen = np.random.default_rng(int.from_bytes(key, "big"))

    @classmethod
    def from_seed(cls, seed: bytes | str | int) -> "RandomStream":
        """Build a stream from a hex string, raw bytes, or an int."""
        if isinstance(seed, str):
            seed = bytes.fromhex(seed)
        elif isinstance(seed, int):
            seed = seed.to_bytes(32, "big", signed=False)
        return cls(hashlib.sha256(b"eprot-seed|" + seed).digest())

    def child(self, *labels: str | int) -> "RandomStream":
        """Derive an independent stream keyed by the given labels."""
        key = self.key
        for label in labels:
            key = _derive_key(key, str(label))
        return RandomStream(key)

    def uniform(self) -> float:
        """A float drawn uniformly from [0, 1)."""
        return float(self._gen.random())

    def bit(self) -> int:
        return int(self._gen.integers(0, 2))

    def bits(self, n: int) -> np.ndarray:
        """n uniform bits as a uint8 array."""
        return self._gen.integers(0, 2, size=n, dtype=np.uint8)

    def bytes(self, n: int) -> bytes:
        return self._gen.bytes(n)

    def integer(self, n: int) -> int:
        """A uniform integer in [0, n), exact for arbitrarily large n."""
        if n <= 0:
            raise ValueError("n must be positive")
        if n == 1:
            return 0
        k = (n - 1).bit_length()
        nbytes = (k + 7) // 8
        mask = (1 << k) - 1
        while True:
            value = int.from_bytes(self._gen.bytes(nbytes), "big") & mask
            if value < n:
                return value

    def shuffle(self, items: list) -> None:
        self._gen.shuffle(items)

    def choice_indices(self, n: int, k: int) -> list[int]:
        """k distinct indices from range(n), sorted."""
        return sorted(int(i) for i in self._gen.choice(n, size=k, replace=False))
