import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eprot import bits as bt
from eprot.crypto.uhash import UHashKey, sample_uhash_key, toeplitz_diagonal, uhash, uhash_from_diagonal


def test_zero_maps_to_zero(rng):
    key = sample_uhash_key(3, 8, rng)
    assert np.array_equal(uhash(key, bt.zeros(6)), bt.zeros(3))


@given(
    a=st.lists(st.integers(0, 1), min_size=6, max_size=6),
    b=st.lists(st.integers(0, 1), min_size=6, max_size=6),
    seed=st.binary(min_size=4, max_size=4),
)
@settings(max_examples=100, deadline=None)
def test_linearity(a, b, seed):
    key = UHashKey(seed, 3)
    av = np.array(a, dtype=np.uint8)
    bv = np.array(b, dtype=np.uint8)
    assert np.array_equal(uhash(key, av ^ bv), uhash(key, av) ^ uhash(key, bv))


def test_variable_input_length(rng):
    key = sample_uhash_key(4, 8, rng)
    assert len(uhash(key, rng.bits(5))) == 4
    assert len(uhash(key, rng.bits(11))) == 4
    assert len(toeplitz_diagonal(key, 11)) == 4 + 11 - 1


def test_empty_input_rejected(rng):
    key = sample_uhash_key(4, 8, rng)
    with pytest.raises(ValueError):
        uhash(key, bt.zeros(0))


def exhaustive_collision_counts(lam: int, in_bits: int):
    """For every input pair, how many diagonals collide them."""
    n_diag = lam + in_bits - 1
    inputs = [np.array(v, dtype=np.uint8) for v in itertools.product((0, 1), repeat=in_bits)]
    outputs = np.zeros((2**n_diag, len(inputs)), dtype=np.int64)
    for d_int in range(2**n_diag):
        diag = bt.int_to_bits(d_int, n_diag)
        for j, v in enumerate(inputs):
            outputs[d_int, j] = bt.bits_to_int(uhash_from_diagonal(diag, v, lam))
    counts = {}
    for a in range(len(inputs)):
        for b in range(a + 1, len(inputs)):
            counts[(a, b)] = int(np.sum(outputs[:, a] == outputs[:, b]))
    return counts, 2**n_diag


def test_exact_universality_small():
    counts, n_keys = exhaustive_collision_counts(lam=2, in_bits=3)
    assert all(c == n_keys // 4 for c in counts.values())


def test_leftover_hashing_exhaustive():
    """(key, hash of uniform V) is within 2^-(1+k) of (key, uniform) whenever
    the input length d >= lam + 2k; exhaustive over keys and inputs."""
    cases = [(1, 5, 2), (2, 8, 3), (3, 9, 3)]
    for lam, d, k in cases:
        assert d >= lam + 2 * k
        n_diag = lam + d - 1
        n_keys = 2**n_diag
        joint = np.zeros((n_keys, 2**lam))
        for d_int in range(n_keys):
            diag = bt.int_to_bits(d_int, n_diag)
            rv_len = d
            # vectorized: output bit i is parity of diag[i:i+d] AND reversed v
            windows = np.stack([diag[i : i + rv_len] for i in range(lam)])
            for v_int in range(2**d):
                v = bt.int_to_bits(v_int, d)
                out = (windows @ v[::-1]) % 2
                joint[d_int, bt.bits_to_int(out)] += 1
        joint = joint / (n_keys * 2**d)
        product = np.full_like(joint, 1.0 / (n_keys * 2**lam))
        sd = 0.5 * np.abs(joint - product).sum()
        assert sd <= 2.0 ** -(1 + k), (lam, d, k, sd)
