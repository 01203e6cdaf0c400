"""Scripted malicious senders for the one-shot protocol.

Each strategy is a concrete failure mode the receiver's checks are meant to
catch (or provably cannot catch without the trapdoor):

- Honest:              the honest sender, for baselines.
- NoDelete:            keeps the control bits (measures them in the standard
                       basis) and fabricates the committed h values; each
                       opened collection then passes the projective check
                       with probability exactly 1/2.
- WrongCommit(f):      quantum-honest, but an f-fraction of round commitments
                       carry fresh random values; an opened corrupted index
                       passes the projective check only with the overlap
                       probability 2^-(1+2*lambda).
- InconsistentOffsets: offset pairs use an independent delta per index and
                       the proof is forged through the simulator token; the
                       receiver cannot detect it, but the extraction-based
                       simulator aborts on the missing common delta.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from eprot import bits as bt
from eprot.crypto.nizk import NizkCrs, NizkProof, OneshotWitness, nizk_prove, nizk_sim, _digest
from eprot.crypto.prg import prg_expand
from eprot.oneshot.protocol import (
    OffsetEntry,
    OneShotSetup,
    SenderMessage,
    hash_to_T,
    pack_vxh,
    sender_send,
    skeleton_sender,
)
from eprot.relations import ProtocolParams
from eprot.rng import RandomStream


@dataclass(frozen=True)
class AdversaryStrategy:
    tag: str
    fraction: float = 1.0
    forced_seed: object = None

    def __post_init__(self):
        if self.tag not in ("Honest", "NoDelete", "WrongCommit", "InconsistentOffsets"):
            raise ValueError(f"unknown strategy {self.tag!r}")
        if not (0.0 <= self.fraction <= 1.0):
            raise ValueError("fraction must lie in [0, 1]")


def adversary_send(
    strategy: AdversaryStrategy,
    params: ProtocolParams,
    setup_: OneShotSetup,
    m0,
    m1,
    rng: RandomStream,
) -> tuple[SenderMessage, NizkCrs | None]:
    """Produce the strategy's message; the second value, when present, is the
    substituted common random string modeling a forged proof."""
    if strategy.tag == "Honest":
        return sender_send(params, setup_, m0, m1, rng, seed=strategy.forced_seed), None
    if strategy.tag == "NoDelete":
        return _no_delete(params, setup_, m0, m1, rng, strategy.forced_seed), None
    if strategy.tag == "WrongCommit":
        return _wrong_commit(params, setup_, m0, m1, rng, strategy.fraction, strategy.forced_seed), None
    return _inconsistent_offsets(params, setup_, m0, m1, rng, strategy.forced_seed)


def _measure_phase(params, setup_, rng, seed, delete_ctl: bool):
    """Steps 1-2 of the sender: entangle and measure every collection."""
    lam = params.lam
    s = bt.as_bits(seed, lam) if seed is not None else rng.bits(lam)
    xs = prg_expand(s, params.prg_out_len)
    measured = []
    for i, coll in enumerate(setup_.collections):
        x_i = xs[2 * lam * i : 2 * lam * (i + 1)]
        if delete_ctl:
            v_i, h_i = skeleton_sender(coll, x_i, rng)
        else:
            eng = coll.engine
            for j, xbit in enumerate(x_i):
                if xbit:
                    eng.cnot(coll.s_ctl, coll.s_msg(j))
            v_i = eng.measure_standard(coll.s_msg_all, rng)
            eng.measure_standard([coll.s_ctl], rng)  # retained, not deleted
            h_i = rng.bit()  # fabricated for the commitment
        measured.append((v_i, x_i, h_i))
    return s, measured


def _offsets_phase(params, setup_, rng, measured, tbar, per_index_delta: bool):
    """Step 4: offset commitments and masks; returns everything the proof needs."""
    lam = params.lam
    scheme = setup_.scheme
    delta = rng.bits(lam)
    offsets, t_strings, offset_coins, deltas = {}, {}, {}, {}
    for i in tbar:
        v_i, x_i, _ = measured[i]
        d_i = rng.bits(lam) if per_index_delta else delta
        t_i = rng.bits(lam)
        r0 = rng.bits(lam)
        r1 = rng.bits(lam)
        offsets[i] = OffsetEntry(
            cm0=scheme.commit(setup_.ck, t_i, r0),
            cm1=scheme.commit(setup_.ck, t_i ^ d_i, r1),
            z0=bt.concat(t_i, r0) ^ v_i,
            z1=bt.concat(t_i ^ d_i, r1) ^ v_i ^ x_i,
        )
        t_strings[i] = t_i
        offset_coins[i] = (r0, r1)
        deltas[i] = d_i
    return delta, offsets, t_strings, offset_coins, deltas


def _masked_messages(lam, m0, m1, delta, t_strings, tbar):
    t_xor = bt.zeros(lam)
    for i in tbar:
        t_xor = t_xor ^ t_strings[i]
    return bt.as_bits(m0, lam) ^ t_xor, bt.as_bits(m1, lam) ^ delta ^ t_xor


def _no_delete(params, setup_, m0, m1, rng, seed) -> SenderMessage:
    scheme = setup_.scheme
    lam = params.lam
    s, measured = _measure_phase(params, setup_, rng, seed, delete_ctl=False)
    cms, coins = [], []
    for v_i, x_i, h_i in measured:
        r_i = rng.bits(lam)
        cms.append(scheme.commit(setup_.ck, pack_vxh(v_i, x_i, h_i), r_i))
        coins.append(r_i)
    _, t_indices = hash_to_T(params, setup_.hk, setup_.ck, cms)
    tbar = [i for i in range(params.ell) if i not in set(t_indices)]
    delta, offsets, t_strings, offset_coins, _ = _offsets_phase(params, setup_, rng, measured, tbar, False)
    m0_masked, m1_masked = _masked_messages(lam, m0, m1, delta, t_strings, tbar)
    message = SenderMessage(
        cms=cms,
        openings={i: (*measured[i], coins[i]) for i in t_indices},
        offsets=offsets,
        proof=None,
        m0_masked=m0_masked,
        m1_masked=m1_masked,
    )
    witness = OneshotWitness(
        t=t_strings,
        delta=delta,
        seed=s,
        offset_coins=offset_coins,
        openings=[(v, h, r) for (v, _, h), r in zip(measured, coins)],
    )
    proof = nizk_prove(setup_.crs, message.statement(setup_.ck), witness, scheme)
    if proof is None:
        raise RuntimeError("NoDelete commitments are well formed; the proof must pass")
    message.proof = proof
    return message


def _wrong_commit(params, setup_, m0, m1, rng, fraction, seed) -> SenderMessage:
    scheme = setup_.scheme
    lam = params.lam
    n_corrupt = round(fraction * params.ell)
    corrupted = set(rng.choice_indices(params.ell, n_corrupt))
    s, measured = _measure_phase(params, setup_, rng, seed, delete_ctl=True)
    cms, committed, coins = [], [], []
    for i, (v_i, x_i, h_i) in enumerate(measured):
        if i in corrupted:
            committed.append((rng.bits(2 * lam), rng.bits(2 * lam), rng.bit()))
        else:
            committed.append((v_i, x_i, h_i))
        r_i = rng.bits(lam)
        cms.append(scheme.commit(setup_.ck, pack_vxh(*committed[i]), r_i))
        coins.append(r_i)
    _, t_indices = hash_to_T(params, setup_.hk, setup_.ck, cms)
    tbar = [i for i in range(params.ell) if i not in set(t_indices)]
    # masks use the true measured values, so the unopened half still opens
    delta, offsets, t_strings, offset_coins, _ = _offsets_phase(params, setup_, rng, measured, tbar, False)
    m0_masked, m1_masked = _masked_messages(lam, m0, m1, delta, t_strings, tbar)
    message = SenderMessage(
        cms=cms,
        openings={i: (*committed[i], coins[i]) for i in t_indices},
        offsets=offsets,
        proof=None,
        m0_masked=m0_masked,
        m1_masked=m1_masked,
    )
    # the witness relation fails on corrupted x values; send a junk tag
    message.proof = NizkProof(_digest(message.statement(setup_.ck)), rng.bytes(16))
    message.corrupted_indices = corrupted
    return message


def _inconsistent_offsets(params, setup_, m0, m1, rng, seed):
    scheme = setup_.scheme
    lam = params.lam
    s, measured = _measure_phase(params, setup_, rng, seed, delete_ctl=True)
    cms, coins = [], []
    for v_i, x_i, h_i in measured:
        r_i = rng.bits(lam)
        cms.append(scheme.commit(setup_.ck, pack_vxh(v_i, x_i, h_i), r_i))
        coins.append(r_i)
    _, t_indices = hash_to_T(params, setup_.hk, setup_.ck, cms)
    tbar = [i for i in range(params.ell) if i not in set(t_indices)]
    delta, offsets, t_strings, offset_coins, deltas = _offsets_phase(
        params, setup_, rng, measured, tbar, per_index_delta=True
    )
    mask_delta = deltas[tbar[0]] if tbar else delta
    m0_masked, m1_masked = _masked_messages(lam, m0, m1, mask_delta, t_strings, tbar)
    message = SenderMessage(
        cms=cms,
        openings={i: (*measured[i], coins[i]) for i in t_indices},
        offsets=offsets,
        proof=None,
        m0_masked=m0_masked,
        m1_masked=m1_masked,
    )
    # no common delta exists, so the real relation is unprovable; model a
    # forged proof by routing through the zero-knowledge simulator and
    # handing the receiver the simulated crs
    crs, proof = nizk_sim(message.statement(setup_.ck), lam, rng)
    message.proof = proof
    return message, crs
