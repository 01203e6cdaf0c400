"""One-shot random-receiver-bit string OT over shared EPR pairs.

The run is organized around ell independent *collections*, each holding one
control EPR pair and 2*lambda message EPR pairs.  The sender entangles the
control into a seed-selected subset of message qubits, measures everything,
and sends commitments plus a hash-selected half of the openings; the
receiver checks the opened half projectively, recovers one of two masked
offset strings per unopened collection, and XORs its way to (b, m_b).

Qubit layout inside a collection (sender half first):
    0            S_ctl
    1..2L        S_msg
    1+2L         R_ctl
    2+2L..1+4L   R_msg
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from eprot import bits as bt
from eprot.crypto.cihash import CIHashKey, ci_hash, sample_hash_key, t_subset_to_indices
from eprot.crypto.commitment import Commitment, CommitmentScheme, CommitKey, ExtractKey
from eprot.crypto.nizk import (
    NizkCrs,
    NizkProof,
    OneshotStatement,
    OneshotWitness,
    nizk_crs_gen,
    nizk_prove,
    nizk_verify,
)
from eprot.crypto.prg import prg_expand
from eprot.quantum.backend import make_engine, prepare_epr_pairs, project_psi
from eprot.relations import ProtocolParams
from eprot.rng import RandomStream


class Collection:
    """Quantum state of one repetition plus its register bookkeeping."""

    def __init__(self, lam: int, backend: str):
        self.lam = lam
        self.n_qubits = 2 * (1 + 2 * lam)
        self.engine = make_engine(backend, self.n_qubits)
        prepare_epr_pairs(self.engine, [(q, q + 1 + 2 * lam) for q in range(1 + 2 * lam)])

    @property
    def s_ctl(self) -> int:
        return 0

    def s_msg(self, j: int) -> int:
        return 1 + j

    @property
    def r_ctl(self) -> int:
        return 1 + 2 * self.lam

    def r_msg(self, j: int) -> int:
        return 2 + 2 * self.lam + j

    @property
    def s_msg_all(self) -> list[int]:
        return [self.s_msg(j) for j in range(2 * self.lam)]

    @property
    def r_msg_all(self) -> list[int]:
        return [self.r_msg(j) for j in range(2 * self.lam)]


@dataclass
class ReceiverRegisters:
    """The receiver's registers of one collection, on whatever engine holds them."""

    engine: object
    ctl: int
    msg: list[int]


@dataclass
class ReceiverView:
    params: ProtocolParams
    regs: list[ReceiverRegisters]
    ck: CommitKey
    crs: NizkCrs
    hk: CIHashKey


@dataclass
class OneShotSetup:
    params: ProtocolParams
    collections: list[Collection]
    ck: CommitKey
    crs: NizkCrs
    hk: CIHashKey | None
    mode: str
    backend: str
    ek: ExtractKey | None = None
    scheme: CommitmentScheme = None

    def receiver_view(self, crs_override: NizkCrs | None = None) -> ReceiverView:
        regs = [ReceiverRegisters(c.engine, c.r_ctl, c.r_msg_all) for c in self.collections]
        return ReceiverView(self.params, regs, self.ck, crs_override or self.crs, self.hk)


@dataclass
class OffsetEntry:
    cm0: Commitment
    cm1: Commitment
    z0: np.ndarray
    z1: np.ndarray


@dataclass
class SenderMessage:
    cms: list[Commitment]
    openings: dict[int, tuple[np.ndarray, np.ndarray, int, np.ndarray]]  # i -> (v, x, h, r)
    offsets: dict[int, OffsetEntry]
    proof: NizkProof
    m0_masked: np.ndarray
    m1_masked: np.ndarray
    corrupted_indices: set | None = None  # WrongCommit bookkeeping, not sent

    def statement(self, ck: CommitKey) -> OneshotStatement:
        tbar = tuple(sorted(self.offsets))
        return OneshotStatement(
            offset_cms={i: (e.cm0, e.cm1) for i, e in self.offsets.items()},
            cms=self.cms,
            tbar=tbar,
            ck=ck,
        )


@dataclass
class ReceiverOutput:
    accept: bool
    failed_step: int | None = None
    detail: str = ""
    b: int | None = None
    m_b: np.ndarray | None = None
    diagnostics: dict = field(default_factory=dict)


@dataclass
class HybridConfig:
    """Which proof-hybrid variations the receiver computation applies.

    coherent:      realize the per-collection step-4 check as the diagonal
                   product projector; on the default path the projector is
                   sampled through the same standard-basis measurements as
                   the sequential check, so verdicts and outputs agree
                   per seed with the honest ordering.
    gamma_before:  insert the low-Hamming-weight check-state projection
                   (with references extracted via ek) between steps 3 and 4.
    gamma_after:   the same projection inserted after the step-4 check.
    """

    coherent: bool = False
    gamma_before: Fraction | None = None
    gamma_after: Fraction | None = None
    ek: ExtractKey | None = None


def scheme_for(params: ProtocolParams) -> CommitmentScheme:
    return CommitmentScheme(lam=params.lam, group_bits=params.group_bits)


def shared_uniform_bits(n_bits: int, rng: RandomStream, batch: int = 16) -> np.ndarray:
    """Derive a shared uniform string by measuring EPR halves on both sides.

    Both parties measure their halves in the standard basis and obtain the
    same uniform bits; this is how every setup string could be produced from
    the entanglement resource alone.  Returns the (common) bit string.
    """
    out = []
    remaining = n_bits
    while remaining > 0:
        k = min(batch, remaining)
        engine = make_engine("stabilizer", 2 * k)
        prepare_epr_pairs(engine, [(j, k + j) for j in range(k)])
        sender_bits = engine.measure_standard(list(range(k)), rng)
        receiver_bits = engine.measure_standard(list(range(k, 2 * k)), rng)
        if not np.array_equal(sender_bits, receiver_bits):
            raise RuntimeError("EPR halves disagreed in the standard basis")
        out.append(sender_bits)
        remaining -= k
    return np.concatenate(out)


def setup(params: ProtocolParams, rng: RandomStream, mode: str = "honest", backend: str = "stabilizer") -> OneShotSetup:
    """Prepare ell collections of EPR pairs and the shared setup strings.

    mode: "honest" (uniform keys), "extract" (trapdoored commitment key,
    retained for the simulation harness), or "programmed" (the hash key is
    left unset for a simulator to program via ci_samp).
    """
    if mode not in ("honest", "extract", "programmed"):
        raise ValueError(f"unknown setup mode {mode!r}")
    scheme = scheme_for(params)
    collections = [Collection(params.lam, backend) for _ in range(params.ell)]
    key_rng = rng.child("setup-keys")
    ek = None
    if mode == "extract":
        ck, ek = scheme.ext_gen(key_rng)
    else:
        ck = scheme.honest_gen(key_rng)
    crs = nizk_crs_gen(params.lam, key_rng)
    hk = None if mode == "programmed" else sample_hash_key(params.lam_ci, params.c, params.t, key_rng)
    return OneShotSetup(params, collections, ck, crs, hk, mode, backend, ek, scheme)


def encode_commitments(ck: CommitKey, cms: list[Commitment]) -> bytes:
    return b"".join(cm.encode(ck.group) for cm in cms)


def hash_to_T(params: ProtocolParams, hk: CIHashKey, ck: CommitKey, cms: list[Commitment]):
    subsets = ci_hash(hk, encode_commitments(ck, cms))
    return subsets, t_subset_to_indices(subsets, params.c)


# -- skeleton (single collection, no commitments) ---------------------------


def skeleton_sender(collection: Collection, x, rng: RandomStream) -> tuple[np.ndarray, int]:
    """Entangle, then measure: returns (v, h) and leaves the receiver's
    registers in the two-term check state."""
    x = bt.as_bits(x, 2 * collection.lam)
    eng = collection.engine
    for j, xbit in enumerate(x):
        if xbit:
            eng.cnot(collection.s_ctl, collection.s_msg(j))
    v = eng.measure_standard(collection.s_msg_all, rng)
    h = int(eng.measure_hadamard([collection.s_ctl], rng)[0])
    return v, h


def skeleton_receiver(collection: Collection, rng: RandomStream) -> tuple[int, np.ndarray]:
    """Measure the receiver registers in the standard basis: (b, v')."""
    eng = collection.engine
    b = int(eng.measure_standard([collection.r_ctl], rng)[0])
    v_prime = eng.measure_standard(collection.r_msg_all, rng)
    return b, v_prime


# -- sender ------------------------------------------------------------------


def pack_vxh(v, x, h: int) -> np.ndarray:
    return bt.concat(v, x, [h])


def sender_send(
    params: ProtocolParams,
    setup_: OneShotSetup,
    m0,
    m1,
    rng: RandomStream,
    seed=None,
) -> SenderMessage:
    """The honest sender's single message (seed overridable for reductions)."""
    lam = params.lam
    scheme = setup_.scheme
    m0 = bt.as_bits(m0, lam)
    m1 = bt.as_bits(m1, lam)
    s = bt.as_bits(seed, lam) if seed is not None else rng.bits(lam)
    xs = prg_expand(s, params.prg_out_len)

    cms: list[Commitment] = []
    measured: list[tuple[np.ndarray, np.ndarray, int, np.ndarray]] = []
    for i, coll in enumerate(setup_.collections):
        x_i = xs[2 * lam * i : 2 * lam * (i + 1)]
        v_i, h_i = skeleton_sender(coll, x_i, rng)
        r_i = rng.bits(lam)
        cms.append(scheme.commit(setup_.ck, pack_vxh(v_i, x_i, h_i), r_i))
        measured.append((v_i, x_i, h_i, r_i))

    _, t_indices = hash_to_T(params, setup_.hk, setup_.ck, cms)
    t_set = set(t_indices)
    tbar = [i for i in range(params.ell) if i not in t_set]

    delta = rng.bits(lam)
    offsets: dict[int, OffsetEntry] = {}
    t_strings: dict[int, np.ndarray] = {}
    offset_coins: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    for i in tbar:
        v_i, x_i, _, _ = measured[i]
        t_i = rng.bits(lam)
        r0 = rng.bits(lam)
        r1 = rng.bits(lam)
        cm0 = scheme.commit(setup_.ck, t_i, r0)
        cm1 = scheme.commit(setup_.ck, t_i ^ delta, r1)
        z0 = bt.concat(t_i, r0) ^ v_i
        z1 = bt.concat(t_i ^ delta, r1) ^ v_i ^ x_i
        offsets[i] = OffsetEntry(cm0, cm1, z0, z1)
        t_strings[i] = t_i
        offset_coins[i] = (r0, r1)

    t_xor = bt.zeros(lam)
    for i in tbar:
        t_xor = t_xor ^ t_strings[i]
    m0_masked = m0 ^ t_xor
    m1_masked = m1 ^ delta ^ t_xor

    message = SenderMessage(
        cms=cms,
        openings={i: measured[i] for i in t_indices},
        offsets=offsets,
        proof=None,
        m0_masked=m0_masked,
        m1_masked=m1_masked,
    )
    statement = message.statement(setup_.ck)
    witness = OneshotWitness(
        t=t_strings,
        delta=delta,
        seed=s,
        offset_coins=offset_coins,
        openings=[(v, h, r) for (v, _, h, r) in measured],
    )
    proof = nizk_prove(setup_.crs, statement, witness, scheme)
    if proof is None:
        raise RuntimeError("honest witness rejected; sender state inconsistent")
    message.proof = proof
    return message


# -- receiver ----------------------------------------------------------------


def _mask_opens(scheme: CommitmentScheme, ck: CommitKey, entry: OffsetEntry, branch: int, v_prime) -> bool:
    lam = scheme.lam
    z = entry.z0 if branch == 0 else entry.z1
    cm = entry.cm0 if branch == 0 else entry.cm1
    plain = bt.as_bits(z) ^ bt.as_bits(v_prime)
    return scheme.open_verify(ck, cm, plain[:lam], plain[lam:])


def receiver_receive(
    params: ProtocolParams,
    view: ReceiverView,
    msg: SenderMessage,
    rng: RandomStream,
    hybrid: HybridConfig | None = None,
) -> ReceiverOutput:
    """The receiver computation, optionally under a hybrid configuration."""
    hybrid = hybrid or HybridConfig()
    lam = params.lam
    scheme = scheme_for(params)
    diagnostics: dict = {}

    # Step 1: recompute the hash, check the opened half
    _, t_indices = hash_to_T(params, view.hk, view.ck, msg.cms)
    t_set = set(t_indices)
    tbar = [i for i in range(params.ell) if i not in t_set]
    if set(msg.openings) != t_set or set(msg.offsets) != set(tbar):
        return ReceiverOutput(False, 1, "opened/offset index sets do not match the hash")
    for i in t_indices:
        v, x, h, r = msg.openings[i]
        if not scheme.open_verify(view.ck, msg.cms[i], pack_vxh(v, x, h), r):
            return ReceiverOutput(False, 1, f"opening {i} does not verify")

    # Step 2: projective check of every opened collection (measure all, then check)
    step2_results = {}
    step2_probs = {}
    for i in t_indices:
        v, x, h, _ = msg.openings[i]
        regs = view.regs[i]
        accepted, prob = project_psi(regs.engine, v, x, h, regs.ctl, regs.msg, rng)
        step2_results[i] = accepted
        step2_probs[i] = prob
    diagnostics["step2_results"] = step2_results
    diagnostics["step2_probs"] = step2_probs
    rejected = [i for i in t_indices if not step2_results[i]]
    if rejected:
        return ReceiverOutput(False, 2, f"projective check rejected at {rejected[0]}", diagnostics=diagnostics)

    # Step 3: proof verification
    if not nizk_verify(view.crs, msg.statement(view.ck), msg.proof):
        return ReceiverOutput(False, 3, "proof rejected", diagnostics=diagnostics)

    # Optional low-weight projection before step 4 (with extracted references)
    if hybrid.gamma_before is not None:
        from eprot.oneshot.simulators import build_gamma_projector_from_ek

        projector = build_gamma_projector_from_ek(scheme, hybrid.ek, hybrid.gamma_before, msg.cms, tbar)
        ok, e_bits = projector.measure([view.regs[i] for i in tbar], rng)
        diagnostics["gamma_before_pattern"] = e_bits
        if not ok:
            return ReceiverOutput(False, 5, "low-weight projection (pre step 4) rejected", diagnostics=diagnostics)

    # Step 4: measure the unopened collections and open one mask each.
    # The coherent variant applies the diagonal product projector; it is
    # sampled through the same standard-basis draws, so outcomes coincide
    # with the sequential ordering seed for seed.
    outcomes: dict[int, tuple[int, np.ndarray]] = {}
    for i in tbar:
        regs = view.regs[i]
        b_i = int(regs.engine.measure_standard([regs.ctl], rng)[0])
        v_i = regs.engine.measure_standard(regs.msg, rng)
        outcomes[i] = (b_i, v_i)
    opens = {i: _mask_opens(scheme, view.ck, msg.offsets[i], outcomes[i][0], outcomes[i][1]) for i in tbar}
    if hybrid.coherent:
        diagnostics["coherent_accept"] = all(opens.values())
        if not all(opens.values()):
            return ReceiverOutput(False, 4, "coherent mask-opening projection rejected", diagnostics=diagnostics)
    else:
        for i in tbar:
            if not opens[i]:
                return ReceiverOutput(False, 4, f"mask opening failed at {i}", diagnostics=diagnostics)

    if hybrid.gamma_after is not None:
        from eprot.oneshot.simulators import build_gamma_projector_from_ek

        projector = build_gamma_projector_from_ek(scheme, hybrid.ek, hybrid.gamma_after, msg.cms, tbar)
        ok, e_bits = projector.measure([view.regs[i] for i in tbar], rng)
        diagnostics["gamma_after_pattern"] = e_bits
        if not ok:
            return ReceiverOutput(False, 6, "low-weight projection (post step 4) rejected", diagnostics=diagnostics)

    # Step 5: combine
    b = 0
    t_xor = bt.zeros(lam)
    for i in tbar:
        b_i, v_i = outcomes[i]
        b ^= b_i
        plain = (msg.offsets[i].z0 if b_i == 0 else msg.offsets[i].z1) ^ v_i
        t_xor = t_xor ^ plain[:lam]
    m_b = (msg.m0_masked if b == 0 else msg.m1_masked) ^ t_xor
    diagnostics["b_bits"] = {i: outcomes[i][0] for i in tbar}
    return ReceiverOutput(True, None, "", b, m_b, diagnostics)
