"""The cryptographic (input-independent) algorithms of the two-round OT split.

Only here and in the setup do commitments and the subset hash appear; the
input-dependent algorithms in :mod:`eprot.tworound.nc` are bit algebra plus
the universal hash.
"""

from __future__ import annotations

import numpy as np

from eprot import bits as bt
from eprot.crypto.cihash import ci_hash, t_subset_to_indices
from eprot.relations import ProtocolParams
from eprot.rng import RandomStream
from eprot.tworound.protocol import TwoRoundKeys
from eprot.tworound.types import Omega, Ots1C, SigmaR, SigmaS


def _encode_cms(keys: TwoRoundKeys, cms: list) -> bytes:
    return b"".join(cm.encode(keys.ck.group) for cm in cms)


def ot1_c(params: ProtocolParams, keys: TwoRoundKeys, sigma_r: SigmaR, rng: RandomStream) -> tuple[Ots1C, Omega]:
    """Commit to every measurement triple and open the hash-selected half."""
    lam = params.lam
    cms = []
    coins = []
    for i in range(params.ell):
        triple = np.array([sigma_r.theta[i], sigma_r.v[i, 0], sigma_r.v[i, 1]], dtype=np.uint8)
        r = rng.bits(lam)
        cms.append(keys.scheme.commit(keys.ck, triple, r))
        coins.append(r)
    t_subsets = ci_hash(keys.hk, _encode_cms(keys, cms))
    t_indices = t_subset_to_indices(t_subsets, params.c)
    openings = {
        i: (int(sigma_r.theta[i]), int(sigma_r.v[i, 0]), int(sigma_r.v[i, 1]), coins[i])
        for i in t_indices
    }
    tbar = [i for i in range(params.ell) if i not in set(t_indices)]
    omega = Omega({i: (int(sigma_r.theta[i]), int(sigma_r.v[i, sigma_r.theta[i]])) for i in tbar})
    return Ots1C(cms, t_subsets, t_indices, openings), omega


def ot2_c(params: ProtocolParams, keys: TwoRoundKeys, sigma_s: SigmaS, ots1c: Ots1C) -> tuple[bool, str]:
    """The sender's cut-and-choose check: (accepted, failing condition)."""
    t_subsets = ci_hash(keys.hk, _encode_cms(keys, ots1c.cms))
    if t_subsets != ots1c.t_subsets or ots1c.t_indices != t_subset_to_indices(t_subsets, params.c):
        return False, "hash mismatch"
    if set(ots1c.openings) != set(ots1c.t_indices):
        return False, "opened set mismatch"
    for i in ots1c.t_indices:
        theta, v0, v1, r = ots1c.openings[i]
        triple = np.array([theta, v0, v1], dtype=np.uint8)
        if not keys.scheme.open_verify(keys.ck, ots1c.cms[i], triple, r):
            return False, f"opening {i} invalid"
    u_set = set(sigma_s.u_set)
    for i in ots1c.t_indices:
        if i in u_set and sigma_s.theta_s[i] == ots1c.openings[i][0]:
            if (int(sigma_s.v[i, 0]), int(sigma_s.v[i, 1])) != (ots1c.openings[i][1], ots1c.openings[i][2]):
                return False, f"value mismatch at checked index {i}"
    return True, ""
