"""Setup and the two parties' EPR measurements for the two-round OT.

Every index i carries two EPR pairs; party-side measurement is plain BB84
(single-qubit, basis 0 = standard, 1 = Hadamard), so each pair lives in its
own 2-qubit engine with qubit 0 the sender half and qubit 1 the receiver
half.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from eprot.crypto.cihash import CIHashKey, sample_hash_key
from eprot.crypto.commitment import CommitmentScheme, CommitKey, ExtractKey
from eprot.quantum.backend import make_engine, prepare_epr_pairs
from eprot.relations import ProtocolParams
from eprot.rng import RandomStream


class EprPair:
    """One shared pair; each side measures its own half exactly once."""

    def __init__(self, backend: str = "stabilizer"):
        self.engine = make_engine(backend, 2)
        prepare_epr_pairs(self.engine, [(0, 1)])

    def measure_sender(self, basis: int, rng: RandomStream) -> int:
        return self._measure(0, basis, rng)

    def measure_receiver(self, basis: int, rng: RandomStream) -> int:
        return self._measure(1, basis, rng)

    def _measure(self, qubit: int, basis: int, rng: RandomStream) -> int:
        if basis:
            return int(self.engine.measure_hadamard([qubit], rng)[0])
        return int(self.engine.measure_standard([qubit], rng)[0])


class PreparedSenderQubit:
    """A directly prepared stand-in for a sender half (simulator output).

    The receiver half never existed, so only sender measurements are legal.
    """

    def __init__(self, value: int, basis: int, backend: str = "stabilizer"):
        self.engine = make_engine(backend, 1)
        if value:
            self.engine.x(0)
        if basis:
            self.engine.h(0)

    def measure_sender(self, basis: int, rng: RandomStream) -> int:
        if basis:
            return int(self.engine.measure_hadamard([0], rng)[0])
        return int(self.engine.measure_standard([0], rng)[0])

    def measure_receiver(self, basis: int, rng: RandomStream) -> int:
        raise RuntimeError("simulated sender qubits have no receiver half")


@dataclass
class TwoRoundKeys:
    scheme: CommitmentScheme
    ck: CommitKey
    hk: CIHashKey
    ek: ExtractKey | None = None


@dataclass
class TwoRoundSetup:
    params: ProtocolParams
    pairs: list[list]  # pairs[i][j], j in {0, 1}
    keys: TwoRoundKeys


def tworound_params(lam: int = 8, **kwargs) -> ProtocolParams:
    from fractions import Fraction

    defaults = dict(lam=lam, lam_ci=lam, alpha=Fraction(1, 8), c=16, t=2, group_bits=64)
    defaults.update(kwargs)
    return ProtocolParams(**defaults)


def setup_tworound(params: ProtocolParams, rng: RandomStream, mode: str = "honest", backend: str = "stabilizer") -> TwoRoundSetup:
    if mode not in ("honest", "extract"):
        raise ValueError(f"unknown setup mode {mode!r}")
    scheme = CommitmentScheme(lam=params.lam, group_bits=params.group_bits)
    key_rng = rng.child("setup-keys")
    ek = None
    if mode == "extract":
        ck, ek = scheme.ext_gen(key_rng)
    else:
        ck = scheme.honest_gen(key_rng)
    hk = sample_hash_key(params.lam_ci, params.c, params.t, key_rng)
    pairs = [[EprPair(backend), EprPair(backend)] for _ in range(params.ell)]
    return TwoRoundSetup(params, pairs, TwoRoundKeys(scheme, ck, hk, ek))


def mr_measure(pairs: list[list], rng: RandomStream):
    """Receiver measurement: one basis per index, both pairs measured in it."""
    from eprot.tworound.types import SigmaR

    ell = len(pairs)
    theta = rng.bits(ell)
    v = np.zeros((ell, 2), dtype=np.uint8)
    for i in range(ell):
        for j in (0, 1):
            v[i, j] = pairs[i][j].measure_receiver(int(theta[i]), rng)
    return SigmaR(theta=theta, v=v)


def ms_measure(pairs: list[list], rng: RandomStream):
    """Sender measurement: random check subset in random bases, the rest in
    the fixed standard/Hadamard pattern."""
    from eprot.tworound.types import SigmaS

    ell = len(pairs)
    u_flags = rng.bits(ell)
    u_set = [i for i in range(ell) if u_flags[i]]
    theta_s: dict[int, int] = {}
    v = np.zeros((ell, 2), dtype=np.uint8)
    for i in range(ell):
        if u_flags[i]:
            theta_s[i] = rng.bit()
            v[i, 0] = pairs[i][0].measure_sender(theta_s[i], rng)
            v[i, 1] = pairs[i][1].measure_sender(theta_s[i], rng)
        else:
            v[i, 0] = pairs[i][0].measure_sender(0, rng)
            v[i, 1] = pairs[i][1].measure_sender(1, rng)
    return SigmaS(u_set=u_set, theta_s=theta_s, v=v)
