"""Monte-Carlo pass/fail statistics.

Fixed thresholds: frequencies pass within 3 sigma, chi-square tests pass at
p > 0.01.  Seeded suites stay reproducible; free-seed soak runs own the
flakiness budget.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats as sps


@dataclass(frozen=True)
class FrequencyResult:
    frequency: float
    expected: float
    z_score: float
    passed: bool
    n: int

    def __str__(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return f"freq {self.frequency:.4f} vs {self.expected:.4f} (z = {self.z_score:+.2f}, n = {self.n}): {verdict}"


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    p_value: float
    passed: bool
    dof: int

    def __str__(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return f"chi2 = {self.statistic:.2f} (dof {self.dof}, p = {self.p_value:.4f}): {verdict}"


def frequency_test(successes: int, n: int, expected: float, sigmas: float = 3.0) -> FrequencyResult:
    """Is an empirical frequency within `sigmas` standard errors of expected?"""
    if n <= 0:
        raise ValueError("need at least one sample")
    freq = successes / n
    se = np.sqrt(expected * (1.0 - expected) / n)
    z = 0.0 if se == 0 else (freq - expected) / se
    return FrequencyResult(freq, expected, float(z), abs(z) <= sigmas, n)


def uniformity_test(samples, sigmas: float = 3.0) -> FrequencyResult:
    """3-sigma check that a stream of bits is a fair coin."""
    samples = np.asarray(list(samples))
    if samples.size == 0:
        raise ValueError("empty sample")
    return frequency_test(int(samples.sum()), int(samples.size), 0.5, sigmas)


def chi_square(counts, expected, p_threshold: float = 0.01) -> ChiSquareResult:
    """Pearson chi-square of observed counts against expected counts."""
    counts = np.asarray(list(counts), dtype=float)
    expected = np.asarray(list(expected), dtype=float)
    if counts.size == 0 or counts.size != expected.size:
        raise ValueError("counts and expected must be nonempty and equally long")
    if np.any(expected <= 0):
        raise ValueError("expected counts must be positive")
    stat = float(np.sum((counts - expected) ** 2 / expected))
    dof = counts.size - 1
    p = float(sps.chi2.sf(stat, dof))
    return ChiSquareResult(stat, p, p > p_threshold, dof)


def chi_square_uniform(counts, p_threshold: float = 0.01) -> ChiSquareResult:
    counts = np.asarray(list(counts), dtype=float)
    total = counts.sum()
    return chi_square(counts, np.full(counts.size, total / counts.size), p_threshold)
