from itertools import combinations
from math import comb

import pytest

from eprot.crypto.cihash import (
    _prf_value,
    ci_hash,
    ci_samp,
    product_rank,
    product_unrank,
    sample_hash_key,
    subset_rank,
    subset_unrank,
    t_subset_to_indices,
)
from eprot.stats import chi_square_uniform


def test_unrank_examples():
    assert subset_unrank(0, 4, 2) == (1, 2)
    assert subset_unrank(5, 4, 2) == (3, 4)


def test_rank_unrank_exhaustive():
    for c in (2, 4, 6, 8):
        k = c // 2
        seen = []
        for i in range(comb(c, k)):
            s = subset_unrank(i, c, k)
            assert subset_rank(s, c) == i
            seen.append(s)
        assert seen == sorted(seen)  # lexicographic order
        assert seen == list(combinations(range(1, c + 1), k))


def test_unrank_out_of_range():
    with pytest.raises(ValueError):
        subset_unrank(comb(4, 2), 4, 2)
    with pytest.raises(ValueError):
        subset_rank((2, 1), 4)


def test_product_rank_roundtrip():
    c, t = 4, 3
    size = comb(c, 2) ** t
    for i in range(0, size, 7):
        assert product_rank(product_unrank(i, c, t), c, t) == i


def test_hash_output_structure(rng):
    c, t = 6, 3
    hk = sample_hash_key(2, c, t, rng)
    T = ci_hash(hk, b"payload")
    assert len(T) == t
    assert all(len(s) == c // 2 for s in T)
    indices = t_subset_to_indices(T, c)
    assert len(indices) == c * t // 2
    assert all(0 <= i < c * t for i in indices)


def test_hash_deterministic(rng):
    hk = sample_hash_key(2, 4, 2, rng)
    assert ci_hash(hk, b"x") == ci_hash(hk, b"x")


def test_hash_uniform_over_keys(rng):
    """Exact uniformity comes from the uniform offset; the chi-square run
    guards against implementation slips."""
    c, t = 4, 2
    cells = comb(4, 2) ** 2  # 36
    counts = [0] * cells
    n = 100_000
    for i in range(n):
        hk = sample_hash_key(1, c, t, rng.child(i))
        counts[product_rank(ci_hash(hk, b"fixed input"), c, t)] += 1
    assert chi_square_uniform(counts).passed


def test_programming_identity(rng):
    c, t = 4, 2
    for i in range(100):
        r = rng.child("prog", i)
        x = r.bytes(8)
        y = product_unrank(r.integer(comb(c, 2) ** t), c, t)
        hk = ci_samp(2, x, y, c, t, r.child("samp"))
        assert ci_hash(hk, x) == y


def test_programmed_key_fresh_input_uniform(rng):
    c, t = 4, 1
    counts = [0] * comb(4, 2)
    target = ((1, 3),)
    for i in range(30_000):
        hk = ci_samp(1, b"programmed point", target, c, t, rng.child("u", i))
        counts[product_rank(ci_hash(hk, b"a different input"), c, t)] += 1
    assert chi_square_uniform(counts).passed


def test_offset_formula(rng):
    c, t = 4, 1
    y = ((1, 2),)
    assert product_rank(y, c, t) == 0
    hk = ci_samp(1, b"x", y, c, t, rng)
    assert hk.delta == (0 - _prf_value(hk.prf_key, b"x", c, t)) % comb(4, 2)
    # worked instance: prf value 3 and target rank 0 give offset 3
    assert (0 - 3) % comb(4, 2) == 3


def test_malformed_target_rejected(rng):
    with pytest.raises(ValueError):
        ci_samp(1, b"x", ((1, 2, 3),), 4, 1, rng)
    with pytest.raises(ValueError):
        ci_samp(1, b"x", ((0, 2),), 4, 1, rng)
