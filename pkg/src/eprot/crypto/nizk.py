"""Idealized non-interactive argument with a real witness-relation check.

The proof is an authentication token: a digest of the statement plus a tag
keyed by the common random string.  Soundness therefore holds only against
scripted adversaries that do not forge tags (every adversary in this
repository is scripted); the witness relation itself is checked for real, so
an honest prover with a bad witness gets bottom exactly where the protocol
demands it.  The simulator issues a fresh crs and a tag with no witness.

The witness relation is the one the one-shot sender proves: all offset
commitment pairs open to values sharing one common offset, and every round
commitment opens to a message whose middle block equals the seed-expanded
offset string.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from eprot import bits as bt
from eprot.crypto.commitment import CommitKey, Commitment, CommitmentScheme
from eprot.crypto.prg import prg_expand
from eprot.rng import RandomStream

CRS_BITS_PER_LAMBDA = 32
TAG_BYTES = 16


@dataclass(frozen=True)
class NizkCrs:
    bits: bytes

    def encode(self) -> bytes:
        return self.bits


@dataclass(frozen=True)
class NizkProof:
    statement_digest: bytes
    tag: bytes


@dataclass(frozen=True)
class OneshotStatement:
    """(offset commitment pairs on T-bar, all round commitments, T-bar, ck)."""

    offset_cms: dict[int, tuple[Commitment, Commitment]]
    cms: list[Commitment]
    tbar: tuple[int, ...]
    ck: CommitKey

    def encode(self) -> bytes:
        group = self.ck.group
        parts = [group.encode(self.ck.value)]
        parts.append(b"|tbar|" + b",".join(str(i).encode() for i in self.tbar))
        for cm in self.cms:
            parts.append(cm.encode(group))
        for i in self.tbar:
            cm0, cm1 = self.offset_cms[i]
            parts.append(cm0.encode(group))
            parts.append(cm1.encode(group))
        return b"||".join(parts)


@dataclass(frozen=True)
class OneshotWitness:
    """Everything needed to open the statement's commitments.

    ``openings[i]`` is (v_i, h_i, r_i); the offset strings x_i are recomputed
    from the seed, so they are not carried separately.
    """

    t: dict[int, np.ndarray]
    delta: np.ndarray
    seed: np.ndarray
    offset_coins: dict[int, tuple[np.ndarray, np.ndarray]]
    openings: list[tuple[np.ndarray, int, np.ndarray]]


def check_witness(scheme: CommitmentScheme, statement: OneshotStatement, witness: OneshotWitness) -> bool:
    """True iff the witness opens the statement into the proved relation."""
    lam = scheme.lam
    ck = statement.ck
    ell = len(statement.cms)
    for i in statement.tbar:
        cm0, cm1 = statement.offset_cms[i]
        r0, r1 = witness.offset_coins[i]
        if not scheme.open_verify(ck, cm0, witness.t[i], r0):
            return False
        if not scheme.open_verify(ck, cm1, witness.t[i] ^ witness.delta, r1):
            return False
    xs = prg_expand(witness.seed, 2 * lam * ell)
    for i in range(ell):
        v, h, r = witness.openings[i]
        x = xs[2 * lam * i : 2 * lam * (i + 1)]
        message = bt.concat(v, x, [h])
        if not scheme.open_verify(ck, statement.cms[i], message, r):
            return False
    return True


def nizk_crs_gen(lam: int, rng: RandomStream) -> NizkCrs:
    return NizkCrs(rng.bytes(CRS_BITS_PER_LAMBDA * lam // 8))


def _digest(statement) -> bytes:
    return hashlib.sha256(b"eprot-nizk-stmt|" + statement.encode()).digest()


def _tag(crs: NizkCrs, digest: bytes) -> bytes:
    return hashlib.sha256(b"eprot-nizk-tag|" + crs.encode() + b"|" + digest).digest()[:TAG_BYTES]


def nizk_prove(
    crs: NizkCrs, statement: OneshotStatement, witness: OneshotWitness, scheme: CommitmentScheme
) -> NizkProof | None:
    """Prove the statement; None signals an invalid witness."""
    if not check_witness(scheme, statement, witness):
        return None
    digest = _digest(statement)
    return NizkProof(digest, _tag(crs, digest))


def nizk_verify(crs: NizkCrs, statement, proof: NizkProof) -> bool:
    digest = _digest(statement)
    return proof.statement_digest == digest and proof.tag == _tag(crs, digest)


def nizk_sim(statement, lam: int, rng: RandomStream) -> tuple[NizkCrs, NizkProof]:
    """A fresh crs and an accepting proof produced without any witness."""
    crs = nizk_crs_gen(lam, rng)
    digest = _digest(statement)
    return crs, NizkProof(digest, _tag(crs, digest))
