"""Equivocation simulator and the privacy-amplification harness."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from eprot import bits as bt
from eprot.crypto.cihash import ci_samp, product_unrank, t_subset_to_indices
from eprot.crypto.commitment import CommitmentScheme
from eprot.relations import ProtocolParams
from eprot.rng import RandomStream
from eprot.stats import ChiSquareResult, chi_square_uniform, frequency_test
from eprot.tworound.c import ot1_c, ot2_c
from eprot.tworound.nc import ot1_nc, ot2_nc
from eprot.tworound.protocol import PreparedSenderQubit, TwoRoundKeys, mr_measure, ms_measure, setup_tworound
from eprot.tworound.types import Omega, Ots1, Ots1C, Ots1NC


@dataclass
class SimEqRun:
    """A simulated first message with secrets consistent with both choice bits."""

    pairs: list[list]  # prepared sender halves, indexable like setup pairs
    keys: TwoRoundKeys
    ots1: Ots1
    omega0: Omega
    omega1: Omega


def sim_eq(params: ProtocolParams, rng: RandomStream) -> SimEqRun:
    """Fabricate the receiver's first message without a choice bit.

    The opened half is honest; the unopened half commits to zero, publishes
    d_i = theta_i, and prepares the sender halves directly in the fixed
    standard/Hadamard pattern so that both retained-secret variants later
    complete the protocol consistently.
    """
    lam = params.lam
    scheme = CommitmentScheme(lam=params.lam, group_bits=params.group_bits)
    key_rng = rng.child("sim-keys")
    ck = scheme.honest_gen(key_rng)
    t_subsets = product_unrank(
        rng.child("sim-T").integer(comb(params.c, params.c // 2) ** params.t), params.c, params.t
    )
    t_indices = t_subset_to_indices(t_subsets, params.c)
    t_set = set(t_indices)
    tbar = [i for i in range(params.ell) if i not in t_set]

    val_rng = rng.child("sim-values")
    theta = val_rng.bits(params.ell)
    v = val_rng.bits(2 * params.ell).reshape(params.ell, 2)
    cms = []
    openings = {}
    pairs: list[list] = []
    zero_triple = bt.zeros(3)
    for i in range(params.ell):
        if i in t_set:
            triple = np.array([theta[i], v[i, 0], v[i, 1]], dtype=np.uint8)
            r = val_rng.bits(lam)
            cms.append(scheme.commit(ck, triple, r))
            openings[i] = (int(theta[i]), int(v[i, 0]), int(v[i, 1]), r)
            pairs.append(
                [PreparedSenderQubit(int(v[i, 0]), int(theta[i])), PreparedSenderQubit(int(v[i, 1]), int(theta[i]))]
            )
        else:
            cms.append(scheme.commit(ck, zero_triple, val_rng.bits(lam)))
            pairs.append([PreparedSenderQubit(int(v[i, 0]), 0), PreparedSenderQubit(int(v[i, 1]), 1)])

    hk = ci_samp(
        params.lam_ci,
        b"".join(cm.encode(ck.group) for cm in cms),
        t_subsets,
        params.c,
        params.t,
        rng.child("sim-hk"),
    )
    keys = TwoRoundKeys(scheme, ck, hk)
    ots1c = Ots1C(cms, t_subsets, t_indices, openings)
    ots1nc = Ots1NC({i: int(theta[i]) for i in tbar})
    omega0 = Omega({i: (int(theta[i]), int(v[i, theta[i]])) for i in tbar})
    omega1 = Omega({i: (int(theta[i]) ^ 1, int(v[i, theta[i] ^ 1])) for i in tbar})
    return SimEqRun(pairs, keys, Ots1(ots1c, ots1nc), omega0, omega1)


@dataclass
class PrivacyAmplificationReport:
    trials: int
    degenerate_excluded: int
    unchosen_mask_chi2: ChiSquareResult
    payload_size_bound_check: object
    passed: bool

    def __str__(self) -> str:
        return (
            f"privacy amplification over {self.trials} runs "
            f"({self.degenerate_excluded} degenerate excluded):\n"
            f"  unchosen mask uniformity: {self.unchosen_mask_chi2}\n"
            f"  payload-size tail vs binomial: {self.payload_size_bound_check}\n"
            f"  => {'pass' if self.passed else 'FAIL'}"
        )


def privacy_amplification_check(params: ProtocolParams, trials: int, rng: RandomStream) -> PrivacyAmplificationReport:
    """Honest-case consequence of leftover hashing: the mask on the unchosen
    message looks uniform conditioned on the receiver's run.

    Also cross-checks the payload-size tail: the fraction of runs with fewer
    than ell/5 payload indices must match the exact binomial tail.
    """
    lam = params.lam
    counts = np.zeros(2**lam, dtype=int)
    degenerate = 0
    small_payload = 0
    for trial in range(trials):
        trng = rng.child("pa-trial", trial)
        setup_ = setup_tworound(params, trng.child("setup"))
        sigma_r = mr_measure(setup_.pairs, trng.child("mr"))
        sigma_s = ms_measure(setup_.pairs, trng.child("ms"))
        ots1c, omega = ot1_c(params, setup_.keys, sigma_r, trng.child("ot1c"))
        b = trng.child("b").bit()
        ots1 = Ots1(ots1c, ot1_nc(b, omega))
        ok, reason = ot2_c(params, setup_.keys, sigma_s, ots1c)
        if not ok:
            raise RuntimeError(f"honest run failed the sender check: {reason}")
        m0 = trng.child("m0").bits(lam)
        m1 = trng.child("m1").bits(lam)
        ots2 = ot2_nc(params, sigma_s, ots1, m0, m1, trng.child("ot2nc"))
        payload = [i for i in sorted(omega.entries) if i not in set(ots2.u_set)]
        if 5 * len(payload) < params.ell:
            small_payload += 1
        if not payload:
            degenerate += 1
            continue
        unchosen_mask = (ots2.m0_masked ^ m0) if b == 1 else (ots2.m1_masked ^ m1)
        counts[bt.bits_to_int(unchosen_mask)] += 1

    chi = chi_square_uniform(counts)
    # exact Bin(|T-bar|, 1/2) tail for payload < ell/5, averaged over |T-bar| = ell/2
    tbar_size = params.ell // 2
    cutoff = (params.ell + 4) // 5  # smallest k with 5k >= ell
    tail = sum(comb(tbar_size, k) for k in range(0, cutoff)) / 2**tbar_size
    size_check = frequency_test(small_payload, trials, tail)
    return PrivacyAmplificationReport(
        trials=trials,
        degenerate_excluded=degenerate,
        unchosen_mask_chi2=chi,
        payload_size_bound_check=size_check,
        passed=chi.passed and size_check.passed,
    )
