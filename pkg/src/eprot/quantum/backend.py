"""Uniform facade over the two quantum backends.

Both engines expose the same Clifford vocabulary and, crucially, the same
randomness consumption pattern: one uniform draw per genuinely random
measurement outcome, none for forced outcomes.  On Clifford circuits the two
backends therefore produce bitwise identical outcomes from identical streams.
"""

from __future__ import annotations

import numpy as np

from eprot.quantum.pauli import PauliProduct, psi_generators
from eprot.quantum.state import PureState
from eprot.quantum.tableau import StabilizerTableau
from eprot.rng import RandomStream

_CLIFFORD_GATES = ("h", "x", "z", "cnot")


class StatevectorEngine:
    kind = "statevector"

    def __init__(self, n_qubits: int, state: PureState | None = None):
        self.state = state if state is not None else PureState(n_qubits)
        self.n_qubits = self.state.n_qubits

    def h(self, q: int) -> None:
        self.state.apply_1q("h", q)

    def x(self, q: int) -> None:
        self.state.apply_1q("x", q)

    def z(self, q: int) -> None:
        self.state.apply_1q("z", q)

    def cnot(self, c: int, t: int) -> None:
        self.state.apply_cnot(c, t)

    def measure_standard(self, qubits: list[int], rng: RandomStream) -> np.ndarray:
        bits, _ = self.state.measure(list(qubits), "standard", rng)
        return bits

    def measure_hadamard(self, qubits: list[int], rng: RandomStream) -> np.ndarray:
        bits, _ = self.state.measure(list(qubits), "hadamard", rng)
        return bits

    def measure_pauli(self, pauli: PauliProduct, rng: RandomStream) -> int:
        bit, _ = self.state.measure_pauli(pauli.xmask, pauli.zmask, pauli.sign, rng)
        return bit


class StabilizerEngine:
    kind = "stabilizer"

    def __init__(self, n_qubits: int, tableau: StabilizerTableau | None = None):
        self.tableau = tableau if tableau is not None else StabilizerTableau(n_qubits)
        self.n_qubits = self.tableau.n

    def h(self, q: int) -> None:
        self.tableau.apply_h(q)

    def x(self, q: int) -> None:
        self.tableau.apply_x(q)

    def z(self, q: int) -> None:
        self.tableau.apply_z(q)

    def cnot(self, c: int, t: int) -> None:
        self.tableau.apply_cnot(c, t)

    def measure_standard(self, qubits: list[int], rng: RandomStream) -> np.ndarray:
        return np.array([self.tableau.measure_qubit(q, rng)[0] for q in qubits], dtype=np.uint8)

    def measure_hadamard(self, qubits: list[int], rng: RandomStream) -> np.ndarray:
        out = []
        for q in qubits:
            self.tableau.apply_h(q)
            out.append(self.tableau.measure_qubit(q, rng)[0])
        return np.array(out, dtype=np.uint8)

    def measure_pauli(self, pauli: PauliProduct, rng: RandomStream) -> int:
        return self.tableau.measure_pauli(pauli, rng)[0]


def make_engine(kind: str, n_qubits: int):
    if kind == "statevector":
        return StatevectorEngine(n_qubits)
    if kind == "stabilizer":
        return StabilizerEngine(n_qubits)
    raise ValueError(f"unknown backend {kind!r}")


def prepare_epr_pairs(engine, pairs: list[tuple[int, int]]) -> None:
    """Entangle the given (sender, receiver) qubit pairs into Bell pairs."""
    for s, r in pairs:
        engine.h(s)
        engine.cnot(s, r)


def project_psi(engine, v, x, h: int, ctl: int, msg: list[int], rng: RandomStream) -> tuple[bool, float]:
    """Project (ctl, msg) onto the two-term check state via its generators.

    Measures the 1+len(v) stabilizer generators in a fixed order and accepts
    only if every outcome is +1; the acceptance probability is the product of
    the realized branch probabilities.  Works identically on both backends.
    """
    prob = 1.0
    accepted = True
    for gen in psi_generators(v, x, h, ctl, msg):
        if engine.kind == "stabilizer":
            bit, p = engine.tableau.measure_pauli(gen, rng)
        else:
            bit, p = engine.state.measure_pauli(gen.xmask, gen.zmask, gen.sign, rng)
        prob *= p
        if bit != 0:
            accepted = False
            break
    return accepted, prob


def run_circuit(engine, circuit: list[tuple], rng: RandomStream) -> np.ndarray:
    """Execute a gate/measurement instruction list; returns all outcome bits.

    Instructions: ("h"|"x"|"z", q), ("cnot", c, t),
    ("measure", q, "standard"|"hadamard"), ("measure_pauli", PauliProduct).
    """
    outcomes: list[int] = []
    for instr in circuit:
        op = instr[0]
        if op == "cnot":
            engine.cnot(instr[1], instr[2])
        elif op in ("h", "x", "z"):
            getattr(engine, op)(instr[1])
        elif op == "measure":
            _, q, basis = instr
            if basis == "standard":
                outcomes.extend(engine.measure_standard([q], rng))
            elif basis == "hadamard":
                outcomes.extend(engine.measure_hadamard([q], rng))
            else:
                raise ValueError(f"unknown basis {basis!r}")
        elif op == "measure_pauli":
            outcomes.append(engine.measure_pauli(instr[1], rng))
        else:
            raise ValueError(f"non-Clifford or unknown instruction {op!r}")
    return np.array(outcomes, dtype=np.uint8)


def stabilizer_run(
    tableau: StabilizerTableau, circuit: list[tuple], rng: RandomStream
) -> tuple[np.ndarray, StabilizerTableau]:
    """Run a Clifford circuit on a tableau; rejects non-Clifford instructions."""
    engine = StabilizerEngine(tableau.n, tableau)
    outcomes = run_circuit(engine, circuit, rng)
    return outcomes, tableau
