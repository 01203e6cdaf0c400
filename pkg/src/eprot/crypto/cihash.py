"""Programmable hash onto t-tuples of half-size subsets of [c].

The codomain is Y^t where Y is the set of c/2-subsets of {1..c}, ordered
lexicographically; ``subset_rank``/``subset_unrank`` give the bijection with
[0, |Y|) and ``product_rank``/``product_unrank`` extend it to Y^t in
big-endian mixed radix.  A hash key is (prf key, offset delta); hashing maps
x to unrank((prf(key, x) + delta) mod |Y|^t).  Because delta is uniform on
[0, |Y|^t), the output is exactly uniform over the codomain for every fixed
(key-prf value), and programming a key to hit a chosen target is exact:
delta := rank(target) - prf(key, x).

This gives real programmability and uniformity but no correlation
intractability; the relation machinery that the intractability argument
consumes lives in :mod:`eprot.relations` and is exercised directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from eprot.crypto.prg import expand_bytes
from eprot.rng import RandomStream

HASH_KEY_BITS_PER_LAMBDA = 32  # prf-key length is 32 * lambda_ci bits


def subset_rank(subset: tuple[int, ...], c: int) -> int:
    """Lexicographic rank of a sorted k-subset of {1..c}."""
    elems = tuple(subset)
    if list(elems) != sorted(set(elems)):
        raise ValueError("subset must be sorted and duplicate-free")
    if elems and (elems[0] < 1 or elems[-1] > c):
        raise ValueError("subset elements must lie in {1..c}")
    k = len(elems)
    rank = 0
    prev = 0
    for j, e in enumerate(elems):
        for v in range(prev + 1, e):
            rank += comb(c - v, k - j - 1)
        prev = e
    return rank


def subset_unrank(rank: int, c: int, k: int) -> tuple[int, ...]:
    """Inverse of :func:`subset_rank` for k-subsets of {1..c}."""
    total = comb(c, k)
    if not (0 <= rank < total):
        raise ValueError(f"rank {rank} out of range [0, {total})")
    out = []
    v = 1
    remaining = k
    while remaining:
        count = comb(c - v, remaining - 1)
        if rank < count:
            out.append(v)
            remaining -= 1
        else:
            rank -= count
        v += 1
    return tuple(out)


def product_rank(subsets: tuple[tuple[int, ...], ...], c: int, t: int) -> int:
    if len(subsets) != t:
        raise ValueError(f"expected {t} coordinates, got {len(subsets)}")
    size = comb(c, c // 2)
    rank = 0
    for s in subsets:
        if len(s) != c // 2:
            raise ValueError("each coordinate must be a c/2-subset")
        rank = rank * size + subset_rank(s, c)
    return rank


def product_unrank(rank: int, c: int, t: int) -> tuple[tuple[int, ...], ...]:
    size = comb(c, c // 2)
    if not (0 <= rank < size**t):
        raise ValueError("product rank out of range")
    out = []
    for _ in range(t):
        rank, digit = divmod(rank, size)
        out.append(subset_unrank(digit, c, c // 2))
    return tuple(reversed(out))


def t_subset_to_indices(subsets: tuple[tuple[int, ...], ...], c: int) -> list[int]:
    """Embed (C_1,...,C_t) into 0-based indices of [ell]: block i covers i*c..i*c+c-1."""
    out = []
    for block, s in enumerate(subsets):
        out.extend(block * c + (e - 1) for e in s)
    return out


@dataclass(frozen=True)
class CIHashKey:
    prf_key: bytes
    delta: int
    c: int
    t: int


def _codomain_size(c: int, t: int) -> int:
    return comb(c, c // 2) ** t


def _prf_value(prf_key: bytes, x: bytes, c: int, t: int) -> int:
    size = _codomain_size(c, t)
    nbytes = (size.bit_length() + 7) // 8 + 16
    raw = expand_bytes(prf_key + b"|" + x, "ci-prf", nbytes)
    return int.from_bytes(raw, "big") % size


def sample_hash_key(lam_ci: int, c: int, t: int, rng: RandomStream) -> CIHashKey:
    """A uniformly random hash key (uniform prf key, uniform offset)."""
    prf_key = rng.bytes(HASH_KEY_BITS_PER_LAMBDA * lam_ci // 8)
    delta = rng.integer(_codomain_size(c, t))
    return CIHashKey(prf_key, delta, c, t)


def ci_hash(hk: CIHashKey, x: bytes) -> tuple[tuple[int, ...], ...]:
    value = (_prf_value(hk.prf_key, x, hk.c, hk.t) + hk.delta) % _codomain_size(hk.c, hk.t)
    return product_unrank(value, hk.c, hk.t)


def ci_samp(
    lam_ci: int, x: bytes, target: tuple[tuple[int, ...], ...], c: int, t: int, rng: RandomStream
) -> CIHashKey:
    """A key conditioned on hashing x to target, with the exact conditional law."""
    rank = product_rank(target, c, t)  # validates the target's structure
    prf_key = rng.bytes(HASH_KEY_BITS_PER_LAMBDA * lam_ci // 8)
    delta = (rank - _prf_value(prf_key, x, c, t)) % _codomain_size(c, t)
    return CIHashKey(prf_key, delta, c, t)
