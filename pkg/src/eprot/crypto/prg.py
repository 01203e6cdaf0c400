"""Counter-mode expansion of a short seed via SHA-256.

``expand_bytes`` is the shared engine (domain-separated by a label); callers
get as many bytes as they ask for, and prefixes agree across lengths.
``prg_expand`` is the protocol-facing bit expander for offset strings.
"""

from __future__ import annotations

import hashlib

import numpy as np

from eprot import bits as bt


def expand_bytes(key: bytes, label: str, n_bytes: int) -> bytes:
    out = bytearray()
    counter = 0
    prefix = label.encode() + b"|" + len(key).to_bytes(4, "big") + key
    while len(out) < n_bytes:
        out.extend(hashlib.sha256(prefix + counter.to_bytes(4, "big")).digest())
        counter += 1
    return bytes(out[:n_bytes])


def expand_bits(key: bytes, label: str, n_bits: int) -> np.ndarray:
    raw = expand_bytes(key, label, (n_bits + 7) // 8)
    return bt.bytes_to_bits(raw, n_bits)


def prg_expand(seed, out_len: int, max_len: int | None = None) -> np.ndarray:
    """Expand a seed bit-string to ``out_len`` pseudorandom bits."""
    if max_len is not None and out_len > max_len:
        raise ValueError(f"requested {out_len} bits exceeds configured maximum {max_len}")
    seed = bt.as_bits(seed)
    return expand_bits(bt.bits_to_bytes(seed) + len(seed).to_bytes(4, "big"), "prg", out_len)
