"""Randomized state/projector families for the verification harnesses."""

from __future__ import annotations

import numpy as np

from eprot.quantum.state import DensityMatrix, PureState
from eprot.rng import RandomStream


def _complex_gaussian(rng: RandomStream, size: int) -> np.ndarray:
    re = np.array([rng.uniform() - 0.5 for _ in range(size)])
    im = np.array([rng.uniform() - 0.5 for _ in range(size)])
    return re + 1j * im


def random_pure_state(rng: RandomStream, n_qubits: int) -> PureState:
    amps = _complex_gaussian(rng, 2**n_qubits)
    return PureState(n_qubits, amps / np.linalg.norm(amps))


def random_low_weight_state(rng: RandomStream, n: int, aux: int) -> PureState:
    """A state on aux + n qubits supported on measured-register strings of
    Hamming weight below n/2 (the parity-extractor hypothesis), with the
    auxiliary register arbitrarily entangled.  Measured register is the last
    n qubits."""
    dim_aux = 2**aux
    amps = np.zeros((dim_aux, 2**n), dtype=complex)
    for u in range(2**n):
        if bin(u).count("1") < n / 2:
            amps[:, u] = _complex_gaussian(rng, dim_aux)
    flat = amps.reshape(-1)
    return PureState(aux + n, flat / np.linalg.norm(flat))


def random_mixed_state(rng: RandomStream, n_qubits: int, rank: int = 3) -> DensityMatrix:
    dim = 2**n_qubits
    m = np.zeros((dim, dim), dtype=complex)
    weights = np.array([rng.uniform() for _ in range(rank)])
    weights = weights / weights.sum()
    for w in weights:
        v = _complex_gaussian(rng, dim)
        v = v / np.linalg.norm(v)
        m += w * np.outer(v, v.conj())
    return DensityMatrix(n_qubits, m)


def random_near_projector_pair(rng: RandomStream, max_qubits: int = 3) -> tuple[DensityMatrix, np.ndarray]:
    """(rho, Pi) with Tr(Pi rho) usually close to 1.

    Pi is rank-1-extended: a random pure projector on a random subset of
    qubits, tensored with identity on the rest.  rho mixes a state inside
    the image with a small random contamination, so the induced
    delta = 1 - Tr(Pi rho) sweeps the small-disturbance regime.
    """
    n = 1 + rng.integer(max_qubits)
    k = 1 + rng.integer(n)
    dim = 2**n
    phi = _complex_gaussian(rng, 2**k)
    phi = phi / np.linalg.norm(phi)
    proj = np.kron(np.outer(phi, phi.conj()), np.eye(2 ** (n - k)))
    inside_rest = _complex_gaussian(rng, 2 ** (n - k))
    inside_rest = inside_rest / np.linalg.norm(inside_rest)
    inside = np.kron(phi, inside_rest)
    eps = rng.uniform() * 0.2
    noise = random_mixed_state(rng, n).matrix
    m = (1 - eps) * np.outer(inside, inside.conj()) + eps * noise
    return DensityMatrix(n, m), proj
