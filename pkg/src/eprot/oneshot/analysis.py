"""Exact (tolerance-free up to float epsilon) analyses used by the test harness.

These functions never sample: they enumerate measurement branches and compare
density matrices, providing the independent side of the dual-route checks on
the parity extractor, the receiver-bit uniformity, and the product-projector
rejection bound.
"""

from __future__ import annotations

import math

import numpy as np

from eprot import bits as bt
from eprot.quantum.state import DensityMatrix, PureState


def _measurement_branches(state: PureState, register: list[int], basis: str) -> np.ndarray:
    """Rows: unnormalized residual vectors per outcome string on the register."""
    work = state.copy()
    if basis == "hadamard":
        for q in register:
            work.apply_1q("h", q)
    elif basis != "standard":
        raise ValueError(f"unknown basis {basis!r}")
    rest = [q for q in range(state.n_qubits) if q not in register]
    tensor = work.amps.reshape((2,) * state.n_qubits)
    moved = np.transpose(tensor, list(register) + rest)
    return moved.reshape(2 ** len(register), -1)


def parity_joint_td(state: PureState, register: list[int], basis: str) -> float:
    """TD between the exact (residual, parity) state and residual x I/2,
    with the register measured in the given basis."""
    branches = _measurement_branches(state, register, basis)
    dim = branches.shape[1]
    rho = [np.zeros((dim, dim), dtype=complex), np.zeros((dim, dim), dtype=complex)]
    for e in range(branches.shape[0]):
        p = bin(e).count("1") & 1
        rho[p] += np.outer(branches[e], branches[e].conj())
    diff = rho[0] - rho[1]
    eig = np.linalg.eigvalsh(diff)
    return float(0.5 * np.sum(np.abs(eig)))


def xor_extractor_exact_td(state: PureState, x_register: list[int]) -> float:
    """TD between the exact (residual, Hadamard-parity) state and residual x I/2.

    Brute force over all Hadamard outcomes of the measured register: builds
    both parity-conditioned residual densities and takes the trace distance
    of the block difference.  Zero (up to float error) exactly when the
    measured parity is uniform and independent of everything else.
    """
    return parity_joint_td(state, x_register, "hadamard")


def xor_extractor_joint_density(state: PureState, x_register: list[int]) -> tuple[DensityMatrix, DensityMatrix]:
    """(joint cq density on residual x parity qubit, residual x I/2), dense."""
    branches = _measurement_branches(state, x_register, "hadamard")
    dim = branches.shape[1]
    rho = [np.zeros((dim, dim), dtype=complex), np.zeros((dim, dim), dtype=complex)]
    for e in range(branches.shape[0]):
        p = bin(e).count("1") & 1
        rho[p] += np.outer(branches[e], branches[e].conj())
    n_res = int(math.log2(dim))
    joint = np.zeros((2 * dim, 2 * dim), dtype=complex)
    joint[:dim, :dim] = rho[0]
    joint[dim:, dim:] = rho[1]
    marginal = rho[0] + rho[1]
    product = np.zeros_like(joint)
    product[:dim, :dim] = marginal / 2
    product[dim:, dim:] = marginal / 2
    # parity qubit appended as the most significant position of the joint index
    return DensityMatrix(n_res + 1, joint, validate=False), DensityMatrix(n_res + 1, product, validate=False)


def exact_parity_bias(state: PureState, qubits: list[int]) -> float:
    """|P(standard-basis parity of the listed qubits is 0) - 1/2|, exactly."""
    probs = np.abs(state.amps) ** 2
    n = state.n_qubits
    idx = np.arange(len(probs))
    parity = np.zeros(len(probs), dtype=np.int64)
    for q in qubits:
        parity ^= (idx >> (n - 1 - q)) & 1
    return abs(float(probs[parity == 0].sum()) - 0.5)


def diagonal_projector_prob(state: PureState, qubits: list[int], predicate) -> float:
    """<Pi> for a diagonal projector given by a predicate over basis bits."""
    n = state.n_qubits
    k = len(qubits)
    tensor = state.amps.reshape((2,) * n)
    rest = [q for q in range(n) if q not in qubits]
    moved = np.transpose(tensor, list(qubits) + rest).reshape(2**k, -1)
    total = 0.0
    for i in range(2**k):
        bits_i = tuple((i >> (k - 1 - j)) & 1 for j in range(k))
        if predicate(bits_i):
            total += float(np.sum(np.abs(moved[i]) ** 2))
    return total


def product_check_acceptance(scheme, ck, states_and_entries) -> float:
    """Exact acceptance probability of the mask-opening product projector.

    ``states_and_entries`` is a list of (PureState on 1+2*lambda qubits,
    OffsetEntry); the projector on each collection keeps the basis strings
    (b, v') whose selected mask opens the matching offset commitment.
    """
    lam = scheme.lam
    total = 1.0
    for state, entry in states_and_entries:
        def predicate(bits_i, entry=entry):
            b = bits_i[0]
            v_prime = np.array(bits_i[1:], dtype=np.uint8)
            z = entry.z0 if b == 0 else entry.z1
            cm = entry.cm0 if b == 0 else entry.cm1
            plain = bt.as_bits(z) ^ v_prime
            return scheme.open_verify(ck, cm, plain[:lam], plain[lam:])

        total *= diagonal_projector_prob(state, list(range(state.n_qubits)), predicate)
    return total


def claim_rejection_bound(gamma, tbar_size: int) -> float:
    """2^{k (2 gamma log2(3/gamma) - (1/2 - 2 gamma))} for k unopened collections."""
    g = float(gamma)
    exponent = tbar_size * (2 * g * math.log2(3.0 / g) - (0.5 - 2 * g))
    return 2.0**exponent
