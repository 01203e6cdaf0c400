"""The input-dependent algorithms of the two-round OT split.

Pure bit algebra over the measurement records plus the universal hash for
privacy amplification; no commitments, no subset hash, no proofs.  The
acceptance suite enforces this statically by inspecting this module's
imports and calls.
"""

from __future__ import annotations

import numpy as np

from eprot import bits as bt
from eprot.crypto.uhash import UHashKey, uhash
from eprot.relations import ProtocolParams
from eprot.rng import RandomStream
from eprot.tworound.types import Omega, Ots1, Ots1C, Ots1NC, Ots2, SigmaS

UHASH_SEED_BYTES = 32


def ot1_nc(b: int, omega: Omega) -> Ots1NC:
    """Mask the choice bit into every retained basis: d_i = b xor theta_i."""
    return Ots1NC({i: (int(b) ^ theta) & 1 for i, (theta, _) in omega.entries.items()})


def _payload_indices(params: ProtocolParams, ots1c: Ots1C, u_set: list[int]) -> list[int]:
    t_set = set(ots1c.t_indices)
    u = set(u_set)
    return [i for i in range(params.ell) if i not in t_set and i not in u]


def _mask(key: UHashKey, v_bits: list[int], lam: int) -> np.ndarray:
    if not v_bits:
        # degenerate empty payload: identity mask, flagged by callers
        return bt.zeros(lam)
    return uhash(key, np.array(v_bits, dtype=np.uint8))


def ot2_nc(
    params: ProtocolParams, sigma_s: SigmaS, ots1: Ots1, m0, m1, rng: RandomStream
) -> Ots2:
    """Mask both inputs with hashes of the complementary payload strings."""
    lam = params.lam
    seed = rng.bytes(UHASH_SEED_BYTES)
    key = UHashKey(seed, lam)
    payload = _payload_indices(params, ots1.c, sigma_s.u_set)
    v0 = [int(sigma_s.v[i, ots1.nc.d[i]]) for i in payload]
    v1 = [int(sigma_s.v[i, ots1.nc.d[i] ^ 1]) for i in payload]
    m0_masked = bt.as_bits(m0, lam) ^ _mask(key, v0, lam)
    m1_masked = bt.as_bits(m1, lam) ^ _mask(key, v1, lam)
    return Ots2(seed, list(sigma_s.u_set), m0_masked, m1_masked)


def ot3(params: ProtocolParams, ots2: Ots2, b: int, omega: Omega) -> np.ndarray:
    """Unmask the chosen message from the retained bits."""
    lam = params.lam
    key = UHashKey(ots2.hash_seed, lam)
    u = set(ots2.u_set)
    payload = [i for i in sorted(omega.entries) if i not in u]
    v = [omega.entries[i][1] for i in payload]
    masked = ots2.m0_masked if int(b) == 0 else ots2.m1_masked
    return masked ^ _mask(key, v, lam)
