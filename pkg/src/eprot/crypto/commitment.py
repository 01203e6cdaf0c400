"""Extractable commitment realized as hashed-ElGamal encryption with redundancy.

A commitment to m under key ck = g^a is (u, payload) with u = g^rho(r) and
payload = (m || digest(m)) xor KDF(ck^rho(r)); the 2*lambda-bit keyed digest
makes extraction under the trapdoor a = ek recover m exactly when the
commitment is well formed, and return bottom (None) otherwise except with
probability 2^-2lambda.

Trust model: honest-mode keys are uniform subgroup elements and trapdoor-mode
keys are g^a with known a; the two distributions coincide here, standing in
by fiat for the computationally indistinguishable key modes of a lattice
instantiation.  Binding holds because (u, payload) is a deterministic
function of (ck, m, r).  Not constant-time, not post-quantum; this is a
simulation-grade scheme.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from eprot import bits as bt
from eprot.crypto.group import GroupParams, group_for_bits
from eprot.crypto.prg import expand_bits, expand_bytes
from eprot.rng import RandomStream


@dataclass(frozen=True)
class CommitKey:
    group: GroupParams
    value: int


@dataclass(frozen=True)
class ExtractKey:
    group: GroupParams
    exponent: int


@dataclass(frozen=True)
class Commitment:
    u: int
    masked_payload: bytes  # packed (m || digest) xor pad
    msg_bits: int
    check_bits: int

    def encode(self, group: GroupParams) -> bytes:
        return group.encode(self.u) + self.masked_payload

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Commitment)
            and self.u == other.u
            and self.masked_payload == other.masked_payload
            and self.msg_bits == other.msg_bits
            and self.check_bits == other.check_bits
        )


class CommitmentScheme:
    """Parameters binding the group, redundancy length and message cap."""

    def __init__(self, lam: int, group_bits: int = 512, max_msg_bits: int = 4096):
        self.lam = lam
        self.check_bits = 2 * lam
        self.group = group_for_bits(group_bits)
        self.max_msg_bits = max_msg_bits

    # -- key generation ---------------------------------------------------

    def ext_gen(self, rng: RandomStream) -> tuple[CommitKey, ExtractKey]:
        a = 1 + rng.integer(self.group.q - 1)
        return CommitKey(self.group, self.group.pow_g(a)), ExtractKey(self.group, a)

    def honest_gen(self, rng: RandomStream) -> CommitKey:
        """A uniform element of the subgroup (no retained trapdoor)."""
        a = 1 + rng.integer(self.group.q - 1)
        return CommitKey(self.group, self.group.pow_g(a))

    # -- internals ----------------------------------------------------------

    def _rho(self, r: np.ndarray) -> int:
        raw = expand_bytes(
            bt.bits_to_bytes(r) + len(r).to_bytes(4, "big"), "commit-rho", self.group.element_bytes() + 16
        )
        return 1 + int.from_bytes(raw, "big") % (self.group.q - 1)

    def _pad(self, ck: CommitKey, u: int, shared: int, n_bits: int) -> np.ndarray:
        key = self.group.encode(ck.value) + self.group.encode(u) + self.group.encode(shared)
        return expand_bits(key, "commit-pad", n_bits)

    def _digest(self, ck: CommitKey, m: np.ndarray) -> np.ndarray:
        raw = hashlib.sha256(
            b"eprot-red|" + self.group.encode(ck.value) + bt.bits_to_bytes(m) + len(m).to_bytes(4, "big")
        ).digest()
        return bt.bytes_to_bits(raw, self.check_bits)

    # -- operations ---------------------------------------------------------

    def commit(self, ck: CommitKey, m, r) -> Commitment:
        m = bt.as_bits(m)
        r = bt.as_bits(r)
        if len(m) > self.max_msg_bits:
            raise ValueError(f"message of {len(m)} bits exceeds maximum {self.max_msg_bits}")
        rho = self._rho(r)
        u = self.group.pow_g(rho)
        shared = pow(ck.value, rho, self.group.p)
        plain = bt.concat(m, self._digest(ck, m))
        pad = self._pad(ck, u, shared, len(plain))
        return Commitment(
            u=u,
            masked_payload=bt.bits_to_bytes(plain ^ pad),
            msg_bits=len(m),
            check_bits=self.check_bits,
        )

    def open_verify(self, ck: CommitKey, cm: Commitment, m, r) -> bool:
        try:
            return self.commit(ck, m, r) == cm
        except ValueError:
            return False

    def extract(self, ek: ExtractKey, cm: Commitment) -> np.ndarray | None:
        """Recover the message from a commitment alone, or None if malformed."""
        total = cm.msg_bits + cm.check_bits
        shared = pow(cm.u, ek.exponent, ek.group.p)
        ck = CommitKey(ek.group, ek.group.pow_g(ek.exponent))
        pad = self._pad(ck, cm.u, shared, total)
        plain = bt.bytes_to_bits(cm.masked_payload, total) ^ pad
        m, check = plain[: cm.msg_bits], plain[cm.msg_bits :]
        if np.array_equal(check, self._digest(ck, m)):
            return m
        return None

    def random_commitment_like(self, rng: RandomStream, msg_bits: int) -> Commitment:
        """A uniformly random object of commitment shape (for bottom tests)."""
        total_bytes = (msg_bits + self.check_bits + 7) // 8
        return Commitment(
            u=pow(self.group.g, 1 + rng.integer(self.group.q - 1), self.group.p),
            masked_payload=rng.bytes(total_bytes),
            msg_bits=msg_bits,
            check_bits=self.check_bits,
        )
