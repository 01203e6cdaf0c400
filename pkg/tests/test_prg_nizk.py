import numpy as np
import pytest

from eprot import bits as bt
from eprot.crypto import CommitmentScheme
from eprot.crypto.nizk import (
    OneshotStatement,
    OneshotWitness,
    nizk_crs_gen,
    nizk_prove,
    nizk_sim,
    nizk_verify,
)
from eprot.crypto.prg import prg_expand


def test_prg_deterministic():
    seed = [1, 0, 1, 1]
    assert np.array_equal(prg_expand(seed, 128), prg_expand(seed, 128))


def test_prg_prefix_consistent():
    seed = [0, 1, 1, 0]
    assert np.array_equal(prg_expand(seed, 64), prg_expand(seed, 128)[:64])


def test_prg_distinct_seeds_distinct_outputs(rng):
    seen = set()
    for _ in range(1000):
        seed = rng.bits(8)
        seen.add(bt.bits_to_hex(prg_expand(seed, 64)))
    # 256 possible seeds, all expansions distinct
    assert len(seen) == len({bt.bits_to_hex(prg_expand(bt.int_to_bits(v, 8), 64)) for v in range(256)} & seen)


def test_prg_respects_cap():
    with pytest.raises(ValueError):
        prg_expand([1, 0], 65, max_len=64)


def _tiny_instance(rng, lam=2, ell=2, tbar=(1,), tamper=None):
    """A hand-built statement/witness pair for the offset-and-seed relation."""
    scheme = CommitmentScheme(lam=lam, group_bits=64)
    ck = scheme.honest_gen(rng.child("ck"))
    s = rng.child("seed").bits(lam)
    xs = prg_expand(s, 2 * lam * ell)
    cms, openings = [], []
    for i in range(ell):
        v = rng.child("v", i).bits(2 * lam)
        h = rng.child("h", i).bit()
        r = rng.child("r", i).bits(lam)
        x = xs[2 * lam * i : 2 * lam * (i + 1)]
        if tamper == "seed" and i == 0:
            x = x ^ np.uint8(1)
        cms.append(scheme.commit(ck, bt.concat(v, x, [h]), r))
        openings.append((v, int(h), r))
    delta = rng.child("delta").bits(lam)
    offset_cms, t_strings, coins = {}, {}, {}
    for i in tbar:
        t_i = rng.child("t", i).bits(lam)
        r0 = rng.child("r0", i).bits(lam)
        r1 = rng.child("r1", i).bits(lam)
        second = t_i ^ delta
        if tamper == "offset":
            second = second ^ np.uint8(1)
        offset_cms[i] = (scheme.commit(ck, t_i, r0), scheme.commit(ck, second, r1))
        t_strings[i] = t_i
        coins[i] = (r0, r1)
    statement = OneshotStatement(offset_cms, cms, tuple(tbar), ck)
    witness = OneshotWitness(t_strings, delta, s, coins, openings)
    return scheme, statement, witness


def test_prove_verify_roundtrip(rng):
    scheme, statement, witness = _tiny_instance(rng.child("ok"))
    crs = nizk_crs_gen(2, rng.child("crs"))
    proof = nizk_prove(crs, statement, witness, scheme)
    assert proof is not None
    assert nizk_verify(crs, statement, proof)


def test_inconsistent_offset_witness_rejected(rng):
    scheme, statement, witness = _tiny_instance(rng.child("bad-delta"), tamper="offset")
    crs = nizk_crs_gen(2, rng.child("crs"))
    assert nizk_prove(crs, statement, witness, scheme) is None


def test_wrong_seed_block_rejected(rng):
    scheme, statement, witness = _tiny_instance(rng.child("bad-seed"), tamper="seed")
    crs = nizk_crs_gen(2, rng.child("crs"))
    assert nizk_prove(crs, statement, witness, scheme) is None


def test_simulated_proof_verifies(rng):
    _, statement, _ = _tiny_instance(rng.child("sim"))
    crs, proof = nizk_sim(statement, 2, rng.child("simrun"))
    assert nizk_verify(crs, statement, proof)


def test_altered_statement_rejected(rng):
    scheme, statement, witness = _tiny_instance(rng.child("alter"))
    crs = nizk_crs_gen(2, rng.child("crs"))
    proof = nizk_prove(crs, statement, witness, scheme)
    other = OneshotStatement(statement.offset_cms, list(reversed(statement.cms)), statement.tbar, statement.ck)
    assert not nizk_verify(crs, other, proof)


def test_wrong_crs_rejected(rng):
    scheme, statement, witness = _tiny_instance(rng.child("crs-swap"))
    crs = nizk_crs_gen(2, rng.child("crs1"))
    proof = nizk_prove(crs, statement, witness, scheme)
    other_crs = nizk_crs_gen(2, rng.child("crs2"))
    assert not nizk_verify(other_crs, statement, proof)
