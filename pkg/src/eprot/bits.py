"""Bit-string helpers.

Bit strings are numpy uint8 arrays of 0/1 values, most significant bit first.
This matches the quantum engine's convention that qubit 0 is the most
significant bit of a basis index, so measured registers serialize without
reordering.
"""

from __future__ import annotations

import numpy as np


def as_bits(value, length: int | None = None) -> np.ndarray:
    """Coerce a list/tuple/array/int/str of 0s and 1s into a bit array.

    uint8 arrays pass through untouched (internal fast path; they are trusted
    to hold 0/1 values); everything else is converted and validated.
    """
    if isinstance(value, np.ndarray) and value.dtype == np.uint8:
        if length is not None and len(value) != length:
            raise ValueError(f"expected {length} bits, got {len(value)}")
        return value
    if isinstance(value, np.ndarray):
        out = value.astype(np.uint8)
    elif isinstance(value, str):
        out = np.array([int(ch) for ch in value], dtype=np.uint8)
    elif isinstance(value, int):
        if length is None:
            raise ValueError("length required to convert an int")
        return int_to_bits(value, length)
    else:
        out = np.array(list(value), dtype=np.uint8)
    if length is not None and len(out) != length:
        raise ValueError(f"expected {length} bits, got {len(out)}")
    if out.size and out.max() > 1:
        raise ValueError("bit values must be 0 or 1")
    return out


def zeros(n: int) -> np.ndarray:
    return np.zeros(n, dtype=np.uint8)


def concat(*parts: np.ndarray) -> np.ndarray:
    return np.concatenate([as_bits(p) for p in parts])


def bits_to_int(bits: np.ndarray) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def int_to_bits(value: int, length: int) -> np.ndarray:
    if value < 0 or value >> length:
        raise ValueError(f"{value} does not fit in {length} bits")
    return np.array([(value >> (length - 1 - i)) & 1 for i in range(length)], dtype=np.uint8)


def bits_to_bytes(bits: np.ndarray) -> bytes:
    """Pack MSB-first, zero-padding the tail to a whole byte."""
    bits = as_bits(bits)
    return np.packbits(bits).tobytes()


def bytes_to_bits(data: bytes, length: int) -> np.ndarray:
    out = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    if len(out) < length:
        raise ValueError(f"{len(data)} bytes hold fewer than {length} bits")
    return out[:length].astype(np.uint8)


def bits_to_hex(bits: np.ndarray) -> str:
    return bits_to_bytes(bits).hex()


def hex_to_bits(text: str, length: int) -> np.ndarray:
    return bytes_to_bits(bytes.fromhex(text), length)


def parity(bits: np.ndarray) -> int:
    return int(np.bitwise_xor.reduce(as_bits(bits))) if len(bits) else 0


def bitstr(bits: np.ndarray) -> str:
    return "".join(str(int(b)) for b in bits)
