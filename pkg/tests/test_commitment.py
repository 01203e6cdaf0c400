import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eprot.crypto import CommitmentScheme
from eprot.rng import RandomStream

bit_lists = st.lists(st.integers(0, 1), min_size=1, max_size=40)


@pytest.fixture(scope="module")
def scheme():
    return CommitmentScheme(lam=4, group_bits=64)


@pytest.fixture(scope="module")
def keypair(scheme):
    return scheme.ext_gen(RandomStream.from_seed("c0" * 32))


def test_extract_inverts_commit(scheme, keypair, rng):
    ck, ek = keypair
    for i in range(100):
        r = rng.child(i)
        m = r.bits(1 + r.integer(40))
        coins = r.bits(scheme.lam)
        cm = scheme.commit(ck, m, coins)
        assert np.array_equal(scheme.extract(ek, cm), m)


@given(m=bit_lists, coins=st.lists(st.integers(0, 1), min_size=4, max_size=4))
@settings(max_examples=40, deadline=None)
def test_roundtrip_property(scheme, keypair, m, coins):
    ck, ek = keypair
    cm = scheme.commit(ck, m, coins)
    assert scheme.open_verify(ck, cm, m, coins)
    assert np.array_equal(scheme.extract(ek, cm), np.array(m, dtype=np.uint8))


def test_keygen_distinct(scheme, rng):
    keys = {scheme.ext_gen(rng.child(i))[0].value for i in range(100)}
    assert len(keys) == 100


def test_honest_key_commits(scheme, rng):
    ck = scheme.honest_gen(rng.child("honest"))
    r = rng.bits(4)
    cm = scheme.commit(ck, [1, 0, 1], r)
    assert scheme.open_verify(ck, cm, [1, 0, 1], r)
    # same (ck, m, r) -> identical commitment
    assert scheme.commit(ck, [1, 0, 1], r) == cm


def test_flipped_bit_rejected(scheme, keypair, rng):
    ck, _ = keypair
    for i in range(100):
        r = rng.child("flip", i)
        m = r.bits(17)
        coins = r.bits(4)
        cm = scheme.commit(ck, m, coins)
        bad = m.copy()
        bad[r.integer(len(m))] ^= 1
        assert not scheme.open_verify(ck, cm, bad, coins)


def test_extract_of_random_shape_is_bottom(rng):
    scheme = CommitmentScheme(lam=8, group_bits=64)
    ck, ek = scheme.ext_gen(rng.child("keys"))
    bottoms = 0
    for i in range(100):
        junk = scheme.random_commitment_like(rng.child("junk", i), msg_bits=12)
        if scheme.extract(ek, junk) is None:
            bottoms += 1
    assert bottoms == 100


def test_extract_with_mismatched_key_is_bottom(scheme, keypair, rng):
    ck, _ = keypair
    _, other_ek = scheme.ext_gen(rng.child("other"))
    cm = scheme.commit(ck, rng.bits(10), rng.bits(4))
    assert scheme.extract(other_ek, cm) is None


def test_binding_fuzz(scheme, keypair, rng):
    """No fuzzed (m', r') != (m, r) may open an honest commitment."""
    ck, _ = keypair
    r0 = rng.child("base")
    m = r0.bits(9)
    coins = r0.bits(4)
    cm = scheme.commit(ck, m, coins)
    for i in range(10_000):
        r = rng.child("fuzz", i)
        m2 = r.bits(9)
        c2 = r.bits(4)
        if np.array_equal(m2, m) and np.array_equal(c2, coins):
            continue
        assert not scheme.open_verify(ck, cm, m2, c2)


def test_oversized_message_rejected(keypair):
    scheme = CommitmentScheme(lam=4, group_bits=64, max_msg_bits=8)
    ck, _ = keypair
    with pytest.raises(ValueError):
        scheme.commit(ck, [0] * 9, [1, 0, 1, 0])
