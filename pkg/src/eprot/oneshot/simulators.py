"""Both security-proof simulators and the intractability-reduction experiment.

- ``sim_sender_side``  extracts the two strings from a malicious sender's
  message through the commitment trapdoor (the final hybrid of the
  malicious-sender argument).
- ``sim_receiver_side`` fabricates a receiver view from (b, m_b) alone:
  programmed hash key, commitments to zero off the opened set, and directly
  prepared check states.
- ``run_exp2``          the seed-guessing experiment whose success events
  land inside the product relation; the harness checks that implication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from eprot import bits as bt
from eprot.crypto.cihash import ci_samp, product_unrank, t_subset_to_indices
from eprot.crypto.commitment import CommitmentScheme, ExtractKey
from eprot.crypto.nizk import nizk_sim
from eprot.crypto.prg import prg_expand
from eprot.oneshot.protocol import (
    Collection,
    HybridConfig,
    OffsetEntry,
    OneShotSetup,
    ReceiverOutput,
    ReceiverRegisters,
    ReceiverView,
    SenderMessage,
    hash_to_T,
    pack_vxh,
    receiver_receive,
    scheme_for,
    setup,
)
from eprot.quantum.backend import StatevectorEngine, project_psi
from eprot.quantum.state import PureState, psi_state
from eprot.relations import OneShotRelation, ProtocolParams
from eprot.rng import RandomStream


# -- low-Hamming-weight check-state projection --------------------------------


@dataclass
class GammaProjector:
    """Accepts states with fewer than gamma * k collections off their references.

    Realized as a per-collection two-outcome check-state measurement followed
    by thresholding the outcome pattern e (the per-collection projectors
    commute across collections, so this samples the block projector exactly).
    A missing reference (failed extraction) counts as off-reference.
    """

    gamma: Fraction
    refs: list[tuple[np.ndarray, np.ndarray, int] | None]

    def accepts_pattern(self, e_bits: list[int]) -> bool:
        return Fraction(sum(e_bits)) < Fraction(self.gamma) * len(self.refs)

    def measure(self, regs: list[ReceiverRegisters], rng: RandomStream) -> tuple[bool, list[int]]:
        if len(regs) != len(self.refs):
            raise ValueError("one register set per reference required")
        e_bits = []
        for reg, ref in zip(regs, self.refs):
            if ref is None:
                e_bits.append(1)
                continue
            v, x, h = ref
            accepted, _ = project_psi(reg.engine, v, x, h, reg.ctl, reg.msg, rng)
            e_bits.append(0 if accepted else 1)
        return self.accepts_pattern(e_bits), e_bits


def build_gamma_projector(gamma, refs) -> GammaProjector:
    gamma = Fraction(gamma)
    if not (0 < gamma <= 1):
        raise ValueError("gamma must lie in (0, 1]")
    return GammaProjector(gamma, list(refs))


def build_gamma_projector_from_ek(
    scheme: CommitmentScheme, ek: ExtractKey, gamma, cms, tbar: list[int]
) -> GammaProjector:
    """References come from trapdoor extraction of the unopened commitments."""
    if ek is None:
        raise ValueError("the low-weight projection needs the extraction key")
    lam = scheme.lam
    refs = []
    for i in tbar:
        m = scheme.extract(ek, cms[i])
        if m is None or len(m) != 4 * lam + 1:
            refs.append(None)
        else:
            refs.append((m[: 2 * lam], m[2 * lam : 4 * lam], int(m[4 * lam])))
    return build_gamma_projector(gamma, refs)


# -- malicious-sender simulator ------------------------------------------------


@dataclass
class SimSenderResult:
    aborted: bool
    abort_reason: str = ""
    m0: np.ndarray | None = None
    m1: np.ndarray | None = None
    message: SenderMessage | None = None
    receiver_output: ReceiverOutput | None = None


def sim_sender_side(params: ProtocolParams, send_fn, rng: RandomStream) -> SimSenderResult:
    """Run a scripted sender against the extraction-based simulator.

    ``send_fn(setup, rng) -> (SenderMessage, crs_override | None)``.  The
    simulator performs the receiver checks (with the coherent step-4
    ordering), extracts both offset strings per unopened index, requires one
    common offset, and reconstructs (m0, m1) from the masked messages.
    """
    setup_ = setup(params, rng.child("setup"), mode="extract")
    message, crs_override = send_fn(setup_, rng.child("adversary"))
    view = setup_.receiver_view(crs_override)
    out = receiver_receive(
        params, view, message, rng.child("receiver"), HybridConfig(coherent=True)
    )
    if not out.accept:
        return SimSenderResult(True, f"receiver checks failed at step {out.failed_step}", receiver_output=out)

    scheme = setup_.scheme
    lam = params.lam
    tbar = sorted(message.offsets)
    t0s, t1s = {}, {}
    for i in tbar:
        t0 = scheme.extract(setup_.ek, message.offsets[i].cm0)
        t1 = scheme.extract(setup_.ek, message.offsets[i].cm1)
        if t0 is None or t1 is None or len(t0) != lam or len(t1) != lam:
            return SimSenderResult(True, f"offset extraction returned bottom at {i}", receiver_output=out)
        t0s[i], t1s[i] = t0, t1
    deltas = [t0s[i] ^ t1s[i] for i in tbar]
    if any(not np.array_equal(d, deltas[0]) for d in deltas[1:]):
        return SimSenderResult(True, "no common offset across unopened indices", receiver_output=out)
    delta = deltas[0]
    t_xor = bt.zeros(lam)
    for i in tbar:
        t_xor = t_xor ^ t0s[i]
    m0 = message.m0_masked ^ t_xor
    m1 = message.m1_masked ^ delta ^ t_xor
    return SimSenderResult(False, "", m0, m1, message, out)


# -- malicious-receiver simulator ----------------------------------------------


@dataclass
class SimReceiverRun:
    view: ReceiverView
    message: SenderMessage
    t_subsets: tuple
    b_bits: dict[int, int]


def sim_receiver_side(params: ProtocolParams, b: int, m_b, rng: RandomStream) -> SimReceiverRun:
    """Fabricate a receiver view and sender message from (b, m_b) alone.

    The opened half carries genuine check states and openings; the unopened
    half carries commitments to zero, classical register states |b_i, v'_i>
    with the b_i conditioned on XOR b, masks opening only on the measured
    branch, a programmed hash key, and a simulated proof.
    """
    lam = params.lam
    scheme = scheme_for(params)
    m_b = bt.as_bits(m_b, lam)
    key_rng = rng.child("sim-keys")
    ck = scheme.honest_gen(key_rng)

    t_subsets = product_unrank(
        rng.child("sim-T").integer(__codomain(params)), params.c, params.t
    )
    t_indices = t_subset_to_indices(t_subsets, params.c)
    t_set = set(t_indices)
    tbar = [i for i in range(params.ell) if i not in t_set]

    val_rng = rng.child("sim-values")
    cms = [None] * params.ell
    openings = {}
    regs: list[ReceiverRegisters] = [None] * params.ell
    for i in t_indices:
        v = val_rng.bits(2 * lam)
        x = val_rng.bits(2 * lam)
        h = val_rng.bit()
        r = val_rng.bits(lam)
        cms[i] = scheme.commit(ck, pack_vxh(v, x, h), r)
        openings[i] = (v, x, h, r)
        engine = StatevectorEngine(1 + 2 * lam, psi_state(v, x, h))
        regs[i] = ReceiverRegisters(engine, 0, list(range(1, 1 + 2 * lam)))
    zero_vxh = bt.zeros(4 * lam + 1)
    for i in tbar:
        cms[i] = scheme.commit(ck, zero_vxh, val_rng.bits(lam))

    b_bits = {}
    running = 0
    for i in tbar[:-1]:
        b_bits[i] = val_rng.bit()
        running ^= b_bits[i]
    b_bits[tbar[-1]] = running ^ int(b)

    offsets = {}
    t_primes = {}
    zero_t = bt.zeros(lam)
    for i in tbar:
        v_prime = val_rng.bits(2 * lam)
        t_prime = val_rng.bits(lam)
        r_prime = val_rng.bits(lam)
        z_other = val_rng.bits(2 * lam)
        cm_b = scheme.commit(ck, t_prime, r_prime)
        cm_other = scheme.commit(ck, zero_t, val_rng.bits(lam))
        z_b = bt.concat(t_prime, r_prime) ^ v_prime
        if b_bits[i] == 0:
            offsets[i] = OffsetEntry(cm_b, cm_other, z_b, z_other)
        else:
            offsets[i] = OffsetEntry(cm_other, cm_b, z_other, z_b)
        t_primes[i] = t_prime
        basis_state = PureState(1 + 2 * lam, _basis_vector(lam, b_bits[i], v_prime))
        regs[i] = ReceiverRegisters(StatevectorEngine(1 + 2 * lam, basis_state), 0, list(range(1, 1 + 2 * lam)))

    t_xor = bt.zeros(lam)
    for i in tbar:
        t_xor = t_xor ^ t_primes[i]
    masked_b = m_b ^ t_xor
    masked_other = val_rng.bits(lam)
    m0_masked, m1_masked = (masked_b, masked_other) if b == 0 else (masked_other, masked_b)

    message = SenderMessage(cms, openings, offsets, None, m0_masked, m1_masked)
    crs, proof = nizk_sim(message.statement(ck), lam, rng.child("sim-nizk"))
    message.proof = proof
    hk = ci_samp(
        params.lam_ci,
        b"".join(cm.encode(ck.group) for cm in cms),
        t_subsets,
        params.c,
        params.t,
        rng.child("sim-hk"),
    )
    view = ReceiverView(params, regs, ck, crs, hk)
    return SimReceiverRun(view, message, t_subsets, b_bits)


def __codomain(params: ProtocolParams) -> int:
    from math import comb

    return comb(params.c, params.c // 2) ** params.t


def _basis_vector(lam: int, b: int, v_prime) -> np.ndarray:
    n = 1 + 2 * lam
    amps = np.zeros(2**n, dtype=complex)
    amps[(int(b) << (2 * lam)) | bt.bits_to_int(bt.as_bits(v_prime))] = 1.0
    return amps


# -- the seed-guessing experiment ----------------------------------------------


@dataclass
class Exp2Result:
    output: bool
    cond_seed_match: bool
    cond_opened_agree: bool
    cond_unopened_disagree: bool
    relation: OneShotRelation
    cms: list
    t_subsets: tuple
    message: SenderMessage


def run_exp2(params: ProtocolParams, send_fn, rng: RandomStream, s_star=None) -> Exp2Result:
    """Guess the seed, pre-measure the receiver registers, run the sender.

    Outputs 1 iff the extracted offsets match the guessed expansion, every
    opened index agrees with the pre-measured references, and at least a
    1/30 fraction of unopened indices disagree.
    """
    lam = params.lam
    setup_ = setup(params, rng.child("setup"), mode="extract")
    scheme = setup_.scheme
    guess_rng = rng.child("guess")
    s_star = bt.as_bits(s_star, lam) if s_star is not None else guess_rng.bits(lam)
    xs = prg_expand(s_star, params.prg_out_len)

    refs = []
    meas_rng = rng.child("pre-measure")
    for i, coll in enumerate(setup_.collections):
        x_i = xs[2 * lam * i : 2 * lam * (i + 1)]
        eng = coll.engine
        for j, xbit in enumerate(x_i):
            if xbit:
                eng.cnot(coll.r_ctl, coll.r_msg(j))
        h_star = int(eng.measure_hadamard([coll.r_ctl], meas_rng)[0])
        v_star = eng.measure_standard(coll.r_msg_all, meas_rng)
        refs.append((v_star, h_star))

    message, _ = send_fn(setup_, rng.child("adversary"))
    t_subsets, t_indices = hash_to_T(params, setup_.hk, setup_.ck, message.cms)
    t_set = set(t_indices)

    extracted = []
    for cm in message.cms:
        m = scheme.extract(setup_.ek, cm)
        if m is None or len(m) != 4 * lam + 1:
            extracted.append(None)
        else:
            extracted.append((m[: 2 * lam], m[2 * lam : 4 * lam], int(m[4 * lam])))

    cond_seed = all(
        e is not None and np.array_equal(e[1], xs[2 * lam * i : 2 * lam * (i + 1)])
        for i, e in enumerate(extracted)
    )
    agree = [
        e is not None and np.array_equal(e[0], refs[i][0]) and e[2] == refs[i][1]
        for i, e in enumerate(extracted)
    ]
    cond_opened = all(agree[i] for i in t_indices)
    tbar_count = params.ell - len(t_indices)
    disagreements = sum(1 for i in range(params.ell) if i not in t_set and not agree[i])
    cond_unopened = 30 * disagreements >= tbar_count

    relation = OneShotRelation(
        scheme=scheme,
        ek=setup_.ek,
        s_star=s_star,
        refs=refs,
        c=params.c,
        t=params.t,
    )
    return Exp2Result(
        output=cond_seed and cond_opened and cond_unopened,
        cond_seed_match=cond_seed,
        cond_opened_agree=cond_opened,
        cond_unopened_disagree=cond_unopened,
        relation=relation,
        cms=message.cms,
        t_subsets=t_subsets,
        message=message,
    )
