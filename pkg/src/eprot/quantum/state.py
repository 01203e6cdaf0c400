"""Dense statevector engine and density-matrix analysis utilities.

Conventions, fixed once here and relied on everywhere else:

- Qubit 0 is the most significant bit of the amplitude-vector index.
- Measurement collapses the listed qubits to classical values but keeps them
  in the vector (the dimension never changes mid-protocol); ``discard``
  removes qubits explicitly.
- A Hadamard-basis measurement applies H to each listed qubit and then
  measures in the standard basis; the collapsed qubits stay in that rotated,
  classical frame.
- Probabilities and norms are trusted to tolerance 1e-9; a sampled branch
  with norm below 1e-12 is a hard internal error (it means a projector bug,
  not a physical outcome).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from eprot import bits as bt
from eprot.rng import RandomStream

TOL = 1e-9
HARD_TOL = 1e-12
MAX_DENSE_QUBITS = 22

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
GATES_1Q = {"h": _H, "x": _X, "z": _Z}


class PureState:
    """A pure state on ``n_qubits`` qubits as a dense complex vector."""

    def __init__(self, n_qubits: int, amplitudes: np.ndarray | None = None):
        if n_qubits < 1:
            raise ValueError("need at least one qubit")
        if n_qubits > MAX_DENSE_QUBITS:
            raise ValueError(f"dense backend capped at {MAX_DENSE_QUBITS} qubits")
        self.n_qubits = n_qubits
        if amplitudes is None:
            amps = np.zeros(2**n_qubits, dtype=complex)
            amps[0] = 1.0
        else:
            amps = np.asarray(amplitudes, dtype=complex)
            if amps.shape != (2**n_qubits,):
                raise ValueError("amplitude vector length must be 2**n_qubits")
            norm = np.linalg.norm(amps)
            if abs(norm - 1.0) > TOL:
                raise ValueError(f"state not normalized: |norm-1| = {abs(norm-1.0):.3g}")
        self.amps = amps

    def copy(self) -> "PureState":
        out = PureState(self.n_qubits)
        out.amps = self.amps.copy()
        return out

    def _tensor(self) -> np.ndarray:
        return self.amps.reshape((2,) * self.n_qubits)

    # -- gates ------------------------------------------------------------

    def apply_1q(self, name: str, q: int) -> None:
        self._check_targets([q])
        t = self._tensor()
        t = np.moveaxis(t, q, 0)
        t = np.tensordot(GATES_1Q[name], t, axes=([1], [0]))
        self.amps = np.moveaxis(t, 0, q).reshape(-1)

    def apply_cnot(self, control: int, target: int) -> None:
        self._check_targets([control, target])
        if control == target:
            raise ValueError("CNOT control and target must differ")
        t = self._tensor().copy()
        idx0 = [slice(None)] * self.n_qubits
        idx1 = [slice(None)] * self.n_qubits
        idx0[control], idx0[target] = 1, 0
        idx1[control], idx1[target] = 1, 1
        t[tuple(idx0)], t[tuple(idx1)] = t[tuple(idx1)].copy(), t[tuple(idx0)].copy()
        self.amps = t.reshape(-1)

    # -- measurement ------------------------------------------------------

    def prob_one(self, q: int) -> float:
        t = np.abs(self._tensor()) ** 2
        axes = tuple(i for i in range(self.n_qubits) if i != q)
        return float(t.sum(axis=axes)[1])

    def measure_qubit(self, q: int, rng: RandomStream) -> tuple[int, float]:
        """Standard-basis measurement of one qubit.

        Draws randomness only when the outcome is not forced; this keeps the
        draw pattern identical to the stabilizer backend on Clifford states.
        """
        p1 = self.prob_one(q)
        if p1 < TOL:
            outcome, prob = 0, 1.0 - p1
        elif p1 > 1.0 - TOL:
            outcome, prob = 1, p1
        else:
            outcome = 1 if rng.uniform() < p1 else 0
            prob = p1 if outcome == 1 else 1.0 - p1
        self._collapse(q, outcome, prob)
        return outcome, prob

    def _collapse(self, q: int, outcome: int, prob: float) -> None:
        if prob < HARD_TOL:
            raise RuntimeError("collapse onto a zero-norm branch")
        t = self._tensor()
        idx = [slice(None)] * self.n_qubits
        idx[q] = 1 - outcome
        t[tuple(idx)] = 0.0
        self.amps = (t / np.sqrt(prob)).reshape(-1)

    def measure(self, qubits: list[int], basis: str, rng: RandomStream) -> tuple[np.ndarray, float]:
        """Measure the listed qubits; returns (bits, joint probability)."""
        if len(set(qubits)) != len(qubits):
            raise ValueError("qubits must be distinct")
        self._check_targets(qubits)
        if basis not in ("standard", "hadamard"):
            raise ValueError(f"unknown basis {basis!r}")
        if basis == "hadamard":
            for q in qubits:
                self.apply_1q("h", q)
        outcomes = []
        prob = 1.0
        for q in qubits:
            o, p = self.measure_qubit(q, rng)
            outcomes.append(o)
            prob *= p
        return np.array(outcomes, dtype=np.uint8), prob

    def expectation_pauli(self, xmask: int, zmask: int, sign: int) -> float:
        """<P> for the real Pauli product (-1)^sign * prod X^x Z^z (no Y)."""
        if xmask & zmask:
            raise ValueError("Pauli products with Y factors are not supported here")
        n = self.n_qubits
        dim = 1 << n
        idx = np.arange(dim)
        # qubit 0 is the MSB, so qubit q sits at bit position n-1-q
        xflip = _mask_to_index(xmask, n)
        zbits = _mask_to_index(zmask, n)
        phases = 1.0 - 2.0 * (_popcount_array(idx & zbits) & 1)
        val = np.vdot(self.amps, phases * self.amps[idx ^ xflip])
        if sign:
            val = -val
        if abs(val.imag) > 1e-7:
            raise RuntimeError("Pauli expectation should be real")
        return float(val.real)

    def measure_pauli(self, xmask: int, zmask: int, sign: int, rng: RandomStream) -> tuple[int, float]:
        """Two-outcome measurement of a real Pauli product.

        Returns (bit, branch probability); bit 0 means the +1 eigenvalue.
        """
        expect = self.expectation_pauli(xmask, zmask, sign)
        p_minus = 0.5 * (1.0 - expect)
        if p_minus < TOL:
            outcome, prob = 0, 1.0 - p_minus
        elif p_minus > 1.0 - TOL:
            outcome, prob = 1, p_minus
        else:
            outcome = 1 if rng.uniform() < p_minus else 0
            prob = p_minus if outcome == 1 else 1.0 - p_minus
        if prob < HARD_TOL:
            raise RuntimeError("Pauli collapse onto a zero-norm branch")
        n = self.n_qubits
        idx = np.arange(1 << n)
        xflip = _mask_to_index(xmask, n)
        zbits = _mask_to_index(zmask, n)
        phases = 1.0 - 2.0 * (_popcount_array(idx & zbits) & 1)
        applied = phases * self.amps[idx ^ xflip]
        if sign:
            applied = -applied
        if outcome:
            applied = -applied
        self.amps = (self.amps + applied) / (2.0 * np.sqrt(prob))
        return outcome, prob

    # -- projection -------------------------------------------------------

    def project(self, qubits: list[int], subspace, rng: RandomStream) -> tuple[bool, float]:
        """Project the listed qubits onto a subspace and sample the outcome.

        ``subspace`` is either a :class:`PureState` on ``len(qubits)`` qubits
        (rank-1 projector) or a predicate over basis bit-tuples (diagonal
        projector).  Returns (accepted, probability of acceptance); the state
        collapses to the sampled branch.
        """
        self._check_targets(qubits)
        k = len(qubits)
        t = self._tensor()
        rest = [i for i in range(self.n_qubits) if i not in qubits]
        moved = np.transpose(t, qubits + rest).reshape(2**k, -1)
        if isinstance(subspace, PureState):
            if subspace.n_qubits != k:
                raise ValueError("subspace qubit count mismatch")
            phi = subspace.amps
            coeff = phi.conj() @ moved
            prob = float(np.real(np.vdot(coeff, coeff)))
            inside = np.outer(phi, coeff)
        else:
            keep = np.array(
                [bool(subspace(tuple((i >> (k - 1 - j)) & 1 for j in range(k)))) for i in range(2**k)]
            )
            inside = moved * keep[:, None]
            prob = float(np.sum(np.abs(inside) ** 2))
        prob = min(max(prob, 0.0), 1.0)
        if prob > 1.0 - TOL:
            accepted = True
        elif prob < TOL:
            accepted = False
        else:
            accepted = rng.uniform() < prob
        branch = inside if accepted else moved - inside
        norm2 = prob if accepted else 1.0 - prob
        if norm2 < HARD_TOL:
            raise RuntimeError("projection onto a zero-norm branch")
        branch = branch / np.sqrt(norm2)
        shaped = branch.reshape([2] * self.n_qubits)
        inverse = np.argsort(qubits + rest)
        self.amps = np.transpose(shaped, inverse).reshape(-1)
        return accepted, prob

    # -- structure --------------------------------------------------------

    def discard(self, qubits: list[int]) -> "PureState":
        """Drop classical (unentangled, collapsed) qubits from the vector."""
        keep = [i for i in range(self.n_qubits) if i not in qubits]
        if not keep:
            raise ValueError("cannot discard every qubit")
        t = self._tensor()
        moved = np.transpose(t, qubits + keep).reshape(2 ** len(qubits), -1)
        weights = np.linalg.norm(moved, axis=1)
        row = int(np.argmax(weights))
        if abs(weights[row] - 1.0) > TOL:
            raise ValueError("discarded qubits are not classical")
        return PureState(len(keep), moved[row])

    def dump(self) -> list[tuple[str, float, float]]:
        """Debug view: (basis string, real, imag) for non-negligible entries."""
        out = []
        for i, a in enumerate(self.amps):
            if abs(a) > 1e-12:
                out.append((format(i, f"0{self.n_qubits}b"), float(a.real), float(a.imag)))
        return out

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def density(self) -> "DensityMatrix":
        return DensityMatrix(self.n_qubits, np.outer(self.amps, self.amps.conj()))

    def _check_targets(self, qubits) -> None:
        for q in qubits:
            if not (0 <= q < self.n_qubits):
                raise IndexError(f"qubit {q} out of range for {self.n_qubits}-qubit state")


def _mask_to_index(mask: int, n: int) -> int:
    """Translate a qubit mask (bit q = qubit q) into a basis-index mask."""
    out = 0
    for q in range(n):
        if (mask >> q) & 1:
            out |= 1 << (n - 1 - q)
    return out


_POPCOUNT_LUT = np.zeros(1, dtype=np.uint8)


def _popcount_array(values: np.ndarray) -> np.ndarray:
    global _POPCOUNT_LUT
    top = int(values.max()) if values.size else 0
    if top < len(_POPCOUNT_LUT):
        return _POPCOUNT_LUT[values]
    if top < 1 << MAX_DENSE_QUBITS:
        size = 1 << max(1, top.bit_length())
        lut = np.zeros(size, dtype=np.uint8)
        for bit in range(top.bit_length()):
            lut += ((np.arange(size) >> bit) & 1).astype(np.uint8)
        _POPCOUNT_LUT = lut
        return _POPCOUNT_LUT[values]
    out = np.zeros_like(values)
    v = values.copy()
    while v.any():
        out += v & 1
        v >>= 1
    return out


class DensityMatrix:
    """A mixed state; validated Hermitian, unit-trace, positive within 1e-9."""

    def __init__(self, n_qubits: int, matrix: np.ndarray, validate: bool = True):
        self.n_qubits = n_qubits
        m = np.asarray(matrix, dtype=complex)
        dim = 2**n_qubits
        if m.shape != (dim, dim):
            raise ValueError("matrix shape must be 2^n x 2^n")
        if validate:
            if np.max(np.abs(m - m.conj().T)) > TOL:
                raise ValueError("density matrix not Hermitian")
            if abs(np.trace(m).real - 1.0) > TOL or abs(np.trace(m).imag) > TOL:
                raise ValueError("density matrix trace is not 1")
            if np.linalg.eigvalsh(m).min() < -TOL:
                raise ValueError("density matrix not positive semidefinite")
        self.matrix = m


@dataclass(frozen=True)
class RegisterLayout:
    """Named registers mapped to contiguous qubit index ranges."""

    registers: dict[str, range]

    def __post_init__(self):
        seen: set[int] = set()
        for name, rng_ in self.registers.items():
            for q in rng_:
                if q in seen:
                    raise ValueError(f"register {name!r} overlaps another register")
                seen.add(q)
        if seen and seen != set(range(max(seen) + 1)):
            raise ValueError("registers must cover [0, n_qubits) without gaps")

    @property
    def n_qubits(self) -> int:
        return sum(len(r) for r in self.registers.values())

    def __getitem__(self, name: str) -> list[int]:
        return list(self.registers[name])


def epr_layout(k: int) -> RegisterLayout:
    """Layout for k EPR pairs: sender halves first, receiver halves after."""
    return RegisterLayout(
        {"sender": range(0, k), "receiver": range(k, 2 * k)}
    )


def make_epr(k: int, layout: RegisterLayout | None = None) -> PureState:
    """k Bell pairs (|00> + |11>)/sqrt(2) on the designated (sender, receiver) pairs."""
    if layout is None:
        layout = epr_layout(k)
    senders = layout["sender"]
    receivers = layout["receiver"]
    if len(senders) != k or len(receivers) != k:
        raise ValueError("layout must pair k sender qubits with k receiver qubits")
    state = PureState(layout.n_qubits)
    for s, r in zip(senders, receivers):
        state.apply_1q("h", s)
        state.apply_cnot(s, r)
    return state


def apply_gate(state: PureState, gate: str, targets: list[int]) -> PureState:
    """Apply one of {x, z, h, cnot} in place; returns the state for chaining."""
    name = gate.lower()
    if name == "cnot":
        state.apply_cnot(*targets)
    elif name in GATES_1Q:
        (q,) = targets
        state.apply_1q(name, q)
    else:
        raise ValueError(f"unsupported gate {gate!r}")
    return state


def measure(state: PureState, qubits: list[int], basis: str, rng: RandomStream):
    b, p = state.measure(qubits, basis, rng)
    return b, state, p


def project(state: PureState, qubits: list[int], subspace, rng: RandomStream):
    accepted, prob = state.project(qubits, subspace, rng)
    return accepted, prob, state


def psi_state(v, x, h: int) -> PureState:
    """(|0,v> + (-1)^h |1, v xor x>)/sqrt(2), control qubit first."""
    v = bt.as_bits(v)
    x = bt.as_bits(x)
    if len(v) != len(x):
        raise ValueError("v and x must have equal length")
    n = 1 + len(v)
    amps = np.zeros(2**n, dtype=complex)
    lo = bt.bits_to_int(v)
    hi = bt.bits_to_int(v ^ x) | (1 << len(v))
    amps[lo] += 1 / np.sqrt(2)
    amps[hi] += (-1) ** int(h) / np.sqrt(2)
    return PureState(n, amps)


def partial_trace(dm: DensityMatrix, keep: list[int]) -> DensityMatrix:
    """Trace out every qubit not in ``keep``; kept qubits stay in ascending order."""
    n = dm.n_qubits
    if not keep:
        raise ValueError("keep must be nonempty")
    for q in keep:
        if not (0 <= q < n):
            raise IndexError(f"qubit {q} out of range")
    drop = [q for q in range(n) if q not in keep]
    if not drop:
        return DensityMatrix(n, dm.matrix.copy(), validate=False)
    t = dm.matrix.reshape((2,) * (2 * n))
    for q in sorted(drop, reverse=True):
        t = np.trace(t, axis1=q, axis2=q + (t.ndim // 2))
    k = len(keep)
    out = t.reshape(2**k, 2**k)
    return DensityMatrix(k, out, validate=False)


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    if a.matrix.shape != b.matrix.shape:
        raise ValueError("dimension mismatch")
    eig = np.linalg.eigvalsh(a.matrix - b.matrix)
    return float(0.5 * np.sum(np.abs(eig)))


def xor_extract(state: PureState, x_register: list[int], rng: RandomStream) -> tuple[int, PureState]:
    """Hadamard-measure the listed qubits and XOR the outcomes into one bit."""
    if not x_register:
        raise ValueError("x_register must be nonempty")
    outcomes, _ = state.measure(x_register, "hadamard", rng)
    return bt.parity(outcomes), state
