"""Toeplitz universal hashing over GF(2).

The key is a short seed; it expands lazily to the lam + |V| - 1 diagonal bits
of a lam x |V| Toeplitz matrix, so one key serves inputs of any length.
Output bit i is the parity of diagonal window d[i : i+|V|] AND-ed with the
reversed input, which is exactly M @ V with M[i][j] = d[i + (|V|-1) - j].

The family over uniform diagonals is XOR-universal: any fixed nonzero input
maps to zero with probability exactly 2^-lam, which the exhaustive tests
verify by enumerating every diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from eprot import bits as bt
from eprot.crypto.prg import expand_bits
from eprot.rng import RandomStream


@dataclass(frozen=True)
class UHashKey:
    seed: bytes
    out_bits: int


def sample_uhash_key(out_bits: int, key_bytes: int, rng: RandomStream) -> UHashKey:
    return UHashKey(rng.bytes(key_bytes), out_bits)


def toeplitz_diagonal(key: UHashKey, in_bits: int) -> np.ndarray:
    return expand_bits(key.seed, "uhash-diag", key.out_bits + in_bits - 1)


def uhash_from_diagonal(diag: np.ndarray, v, out_bits: int) -> np.ndarray:
    v = bt.as_bits(v)
    n = len(v)
    diag = bt.as_bits(diag, out_bits + n - 1)
    rv = v[::-1]
    return np.array(
        [np.bitwise_xor.reduce(diag[i : i + n] & rv) for i in range(out_bits)], dtype=np.uint8
    )


def uhash(key: UHashKey, v) -> np.ndarray:
    """GF(2) matrix-vector product with the key's Toeplitz matrix."""
    v = bt.as_bits(v)
    if len(v) == 0:
        raise ValueError("input must be nonempty")
    return uhash_from_diagonal(toeplitz_diagonal(key, len(v)), v, key.out_bits)
