"""Exact product-relation machinery and protocol parameter arithmetic.

All thresholds are exact: rationals are :class:`fractions.Fraction`, counts
are integers, and every comparison multiplies through denominators rather
than rounding.  The agreement constants (1 - 1/60 on the whole index set,
[c/2, (1 - 1/120) c] per coordinate, and the >= 1/120 nonempty-coordinate
count) are fixed numbers at every scale, with tie directions as used in the
security reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, ceil

import numpy as np

from eprot.crypto.commitment import Commitment, CommitmentScheme, ExtractKey
from eprot.crypto.prg import prg_expand


def sparsity(alpha: Fraction, c: int) -> Fraction:
    """binom((1-alpha)c, c/2) / 2^c, exactly."""
    alpha = Fraction(alpha)
    if c <= 0 or c % 2:
        raise ValueError("c must be a positive even integer")
    top = (1 - alpha) * c
    if top.denominator != 1:
        raise ValueError("(1 - alpha) * c must be an integer")
    return Fraction(comb(int(top), c // 2), 2**c)


@dataclass(frozen=True)
class ProtocolParams:
    """(lambda, lambda_ci, alpha, c, t) with the derived quantities.

    ``full_scale`` asserts the headline parameterization: alpha = 1/120,
    c = 480, t = 180^3 * lambda_ci, and t >= lambda_ci / (alpha - rho)^3.
    """

    lam: int
    lam_ci: int
    alpha: Fraction
    c: int
    t: int
    group_bits: int = 64
    full_scale: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.lam < 1 or self.lam_ci < 1 or self.t < 1:
            raise ValueError("lambda, lambda_ci and t must be positive")
        rho = sparsity(self.alpha, self.c)  # validates c and (1-alpha)c
        if not rho < self.alpha:
            raise ValueError(f"sparsity {rho} must be below alpha {self.alpha}")
        if (self.alpha * self.c).denominator != 1:
            raise ValueError("alpha * c must be an integer")
        if self.full_scale:
            if self.alpha != Fraction(1, 120) or self.c != 480:
                raise ValueError("full scale requires alpha = 1/120 and c = 480")
            if self.t != 180**3 * self.lam_ci:
                raise ValueError("full scale requires t = 180^3 * lambda_ci")
            if not satisfies_product_bound(self.t, self.lam_ci, self.alpha, rho):
                raise ValueError("t violates the t >= lambda_ci/(alpha-rho)^3 bound")

    @property
    def ell(self) -> int:
        return self.c * self.t

    @property
    def rho(self) -> Fraction:
        return sparsity(self.alpha, self.c)

    @property
    def message_len(self) -> int:
        return self.lam

    @property
    def prg_out_len(self) -> int:
        return 2 * self.lam * self.ell


def satisfies_product_bound(t: int, lam_ci: int, alpha: Fraction, rho: Fraction) -> bool:
    """t >= lam_ci / (alpha - rho)^3, compared in exact arithmetic."""
    gap = Fraction(alpha) - Fraction(rho)
    return t * gap**3 >= lam_ci


def desk_params(lam: int = 4, lam_ci: int = 4, alpha=Fraction(1, 8), c: int = 16, t: int = 2, group_bits: int = 64) -> ProtocolParams:
    return ProtocolParams(lam=lam, lam_ci=lam_ci, alpha=Fraction(alpha), c=c, t=t, group_bits=group_bits)


def full_scale_params(lam_ci: int) -> ProtocolParams:
    return ProtocolParams(
        lam=128, lam_ci=lam_ci, alpha=Fraction(1, 120), c=480, t=180**3 * lam_ci, full_scale=True
    )


# -- agreement thresholds (fixed constants, exact tie directions) -----------

def total_agreement_small_enough(agree: int, ell: int) -> bool:
    """|{i : matching}| <= (1 - 1/60) ell."""
    return 60 * agree <= 59 * ell


def block_in_domain(agree: int, c: int) -> bool:
    """Per-coordinate domain condition: agreement >= c/2."""
    return 2 * agree >= c


def block_nonempty(agree: int, c: int) -> bool:
    """S_iota is nonempty iff  c/2 <= agreement <= (1 - 1/120) c."""
    return 2 * agree >= c and 120 * agree <= 119 * c


def enough_nonempty(count: int, t: int) -> bool:
    """At least a 1/120 fraction of coordinates carry a nonempty set."""
    return 120 * count >= t


def structural_alpha(c: int) -> Fraction:
    """The effective per-coordinate sparsity exponent of the fixed window.

    The nonempty window tops out at agreement A = floor((1 - 1/120) c), so the
    largest per-coordinate set has size binom(A, c/2) = sparsity(alpha_eff, c)
    * 2^c with alpha_eff = (c - A)/c = ceil(c/120)/c.  At c = 480 this is the
    headline alpha = 1/120.
    """
    return Fraction(ceil(Fraction(c, 120)), c)


# -- concrete relations ------------------------------------------------------


@dataclass
class OneShotRelation:
    """The malicious-sender reduction relation R[ek, s*, {v*_i, h*_i}].

    The domain and per-coordinate sets are evaluated on values extracted from
    the commitments; any failed extraction puts the input outside the domain.
    """

    scheme: CommitmentScheme
    ek: ExtractKey
    s_star: np.ndarray
    refs: list[tuple[np.ndarray, int]]  # (v*_i, h*_i) per i
    c: int
    t: int
    debug_counting_check: bool = True

    def __post_init__(self):
        lam = self.scheme.lam
        if len(self.refs) != self.c * self.t:
            raise ValueError("need one reference tuple per index")
        for v, _ in self.refs:
            if len(v) != 2 * lam:
                raise ValueError("reference v must have length 2*lambda")

    @property
    def ell(self) -> int:
        return self.c * self.t

    def _extract_all(self, cms: list[Commitment]):
        lam = self.scheme.lam
        out = []
        for cm in cms:
            m = self.scheme.extract(self.ek, cm)
            if m is None or len(m) != 4 * lam + 1:
                return None
            out.append((m[: 2 * lam], m[2 * lam : 4 * lam], int(m[4 * lam])))
        return out

    def _agreements(self, triples) -> list[bool]:
        return [
            bool(np.array_equal(v, ref_v) and h == ref_h)
            for (v, _, h), (ref_v, ref_h) in zip(triples, self.refs)
        ]

    def in_domain(self, cms: list[Commitment]) -> bool:
        if len(cms) != self.ell:
            raise ValueError(f"expected {self.ell} commitments")
        triples = self._extract_all(cms)
        if triples is None:
            return False
        lam = self.scheme.lam
        xs = prg_expand(self.s_star, 2 * lam * self.ell)
        for i, (_, x, _) in enumerate(triples):
            if not np.array_equal(x, xs[2 * lam * i : 2 * lam * (i + 1)]):
                return False
        agree = self._agreements(triples)
        if not total_agreement_small_enough(sum(agree), self.ell):
            return False
        for block in range(self.t):
            block_agree = sum(agree[block * self.c : (block + 1) * self.c])
            if not block_in_domain(block_agree, self.c):
                return False
        return True

    def coordinate_set_window(self, cms: list[Commitment], block: int) -> tuple[bool, list[int]]:
        """(nonempty?, agreeing positions 1..c) for one coordinate."""
        triples = self._extract_all(cms)
        if triples is None:
            return False, []
        agree = self._agreements(triples)[block * self.c : (block + 1) * self.c]
        positions = [k + 1 for k, a in enumerate(agree) if a]
        return block_nonempty(len(positions), self.c), positions

    def membership(self, cms: list[Commitment], block: int, candidate: tuple[int, ...]) -> bool:
        """The verification circuit C(x, y_iota, iota): candidate hits S_iota."""
        nonempty, positions = self.coordinate_set_window(cms, block)
        if not nonempty:
            return False
        pos = set(positions)
        return len(candidate) == self.c // 2 and all(k in pos for k in candidate)

    def in_relation(self, cms: list[Commitment], target: tuple[tuple[int, ...], ...]) -> bool:
        """True iff cms is in the domain and every nonempty coordinate is hit."""
        if not self.in_domain(cms):
            return False
        triples = self._extract_all(cms)
        agree = self._agreements(triples)
        nonempty_count = 0
        ok = True
        for block in range(self.t):
            block_agree = agree[block * self.c : (block + 1) * self.c]
            positions = {k + 1 for k, a in enumerate(block_agree) if a}
            if not block_nonempty(len(positions), self.c):
                continue
            nonempty_count += 1
            cand = target[block]
            if len(cand) != self.c // 2 or not all(k in positions for k in cand):
                ok = False
        if self.debug_counting_check and not enough_nonempty(nonempty_count, self.t):
            raise AssertionError(
                "counting claim violated: a domain member left fewer than a "
                "1/120 fraction of coordinates nonempty"
            )
        return ok


@dataclass
class TwoRoundRelation:
    """The malicious-receiver relation over (theta, v0, v1) triples.

    Same thresholds as the one-shot relation, with agreement defined on the
    full measured triple and no seed condition.
    """

    scheme: CommitmentScheme
    ek: ExtractKey
    refs: list[tuple[int, int, int]]  # (theta^S_i, v^S_{i,0}, v^S_{i,1})
    c: int
    t: int
    debug_counting_check: bool = True

    @property
    def ell(self) -> int:
        return self.c * self.t

    def _extract_all(self, cms: list[Commitment]):
        out = []
        for cm in cms:
            m = self.scheme.extract(self.ek, cm)
            if m is None or len(m) != 3:
                return None
            out.append((int(m[0]), int(m[1]), int(m[2])))
        return out

    def _agreements(self, triples) -> list[bool]:
        return [trip == ref for trip, ref in zip(triples, self.refs)]

    def in_domain(self, cms: list[Commitment]) -> bool:
        if len(cms) != self.ell:
            raise ValueError(f"expected {self.ell} commitments")
        triples = self._extract_all(cms)
        if triples is None:
            return False
        agree = self._agreements(triples)
        if not total_agreement_small_enough(sum(agree), self.ell):
            return False
        for block in range(self.t):
            if not block_in_domain(sum(agree[block * self.c : (block + 1) * self.c]), self.c):
                return False
        return True

    def in_relation(self, cms: list[Commitment], target: tuple[tuple[int, ...], ...]) -> bool:
        if not self.in_domain(cms):
            return False
        triples = self._extract_all(cms)
        agree = self._agreements(triples)
        nonempty_count = 0
        ok = True
        for block in range(self.t):
            block_agree = agree[block * self.c : (block + 1) * self.c]
            positions = {k + 1 for k, a in enumerate(block_agree) if a}
            if not block_nonempty(len(positions), self.c):
                continue
            nonempty_count += 1
            cand = target[block]
            if len(cand) != self.c // 2 or not all(k in positions for k in cand):
                ok = False
        if self.debug_counting_check and not enough_nonempty(nonempty_count, self.t):
            raise AssertionError("counting claim violated in the two-round relation")
        return ok

    def membership(self, cms: list[Commitment], block: int, candidate: tuple[int, ...]) -> bool:
        triples = self._extract_all(cms)
        if triples is None:
            return False
        agree = self._agreements(triples)[block * self.c : (block + 1) * self.c]
        positions = [k + 1 for k, a in enumerate(agree) if a]
        if not block_nonempty(len(positions), self.c):
            return False
        pos = set(positions)
        return len(candidate) == self.c // 2 and all(k in pos for k in candidate)


# -- structural verification --------------------------------------------------


@dataclass(frozen=True)
class ProductRelationSpec:
    """An approximate product relation presented through its membership circuit."""

    alpha: Fraction
    c: int
    t: int
    circuit: object  # callable(x, block, candidate) -> bool
    rho: Fraction = field(default=None)

    def __post_init__(self):
        if self.rho is None:
            object.__setattr__(self, "rho", sparsity(Fraction(self.alpha), self.c))


@dataclass
class ProductStructureReport:
    ok: bool
    bound: int
    set_sizes: list[list[int]]
    counterexample: tuple | None = None

    def __str__(self) -> str:
        status = "ok" if self.ok else f"VIOLATION at {self.counterexample}"
        return f"product structure: {status}; per-coordinate bound {self.bound}; sizes {self.set_sizes}"


def verify_product_structure(spec: ProductRelationSpec, xs: list) -> ProductStructureReport:
    """Exhaustively check sparsity of the per-coordinate sets (c <= 8 only).

    For each sampled input, enumerates all c/2-subsets per coordinate and
    confirms |S_iota| <= rho * 2^c, the ambient count the sparsity fraction
    refers to; the all-subsets census doubles as the independent check that
    membership is exactly what the circuit accepts.
    """
    if spec.c > 8:
        raise ValueError("exhaustive verification is limited to c <= 8")
    bound_fraction = spec.rho * 2**spec.c
    bound = int(bound_fraction)  # integral when rho = binom(.)/2^c
    all_sizes = []
    for x in xs:
        sizes = []
        for block in range(spec.t):
            members = [
                cand
                for cand in combinations(range(1, spec.c + 1), spec.c // 2)
                if spec.circuit(x, block, cand)
            ]
            sizes.append(len(members))
            if len(members) > bound_fraction:
                return ProductStructureReport(False, bound, all_sizes, (x, block, len(members)))
        all_sizes.append(sizes)
    return ProductStructureReport(True, bound, all_sizes)
