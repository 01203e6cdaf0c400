import numpy as np
import pytest

from eprot.quantum import (
    PauliProduct,
    StabilizerTableau,
    psi_generators,
    psi_state,
    stabilizer_run,
)
from eprot.quantum.backend import StabilizerEngine, StatevectorEngine, run_circuit
from eprot.rng import RandomStream


def random_clifford_circuit(rng, n_qubits, n_ops, measure_rate=0.3):
    circuit = []
    for k in range(n_ops):
        r = rng.child(k)
        roll = r.uniform()
        if roll < measure_rate:
            kind = r.integer(3)
            q = r.integer(n_qubits)
            if kind == 0:
                circuit.append(("measure", q, "standard"))
            elif kind == 1:
                circuit.append(("measure", q, "hadamard"))
            else:
                xmask = zmask = 0
                for qq in range(n_qubits):
                    w = r.child(qq).integer(4)
                    if w == 1:
                        xmask |= 1 << qq
                    elif w == 2:
                        zmask |= 1 << qq
                if xmask | zmask == 0:
                    zmask = 1 << q
                circuit.append(("measure_pauli", PauliProduct(xmask, zmask, r.integer(2))))
        else:
            gate = ("h", "x", "z", "cnot")[r.integer(4)]
            if gate == "cnot" and n_qubits > 1:
                a = r.integer(n_qubits)
                b = (a + 1 + r.integer(n_qubits - 1)) % n_qubits
                circuit.append(("cnot", a, b))
            else:
                circuit.append((gate if gate != "cnot" else "h", r.integer(n_qubits)))
    return circuit


def test_bell_equal_bits(rng):
    for i in range(50):
        tab = StabilizerTableau(2)
        circ = [("h", 0), ("cnot", 0, 1), ("measure", 0, "standard"), ("measure", 1, "standard")]
        out, _ = stabilizer_run(tab, circ, rng.child(i))
        assert out[0] == out[1]


def test_bell_stabilizer_measurements(rng):
    tab = StabilizerTableau(2)
    tab.apply_h(0)
    tab.apply_cnot(0, 1)
    # XX and ZZ stabilize the Bell state: deterministic +1
    assert tab.measure_pauli(PauliProduct(0b11, 0, 0), rng) == (0, 1.0)
    assert tab.measure_pauli(PauliProduct(0, 0b11, 0), rng) == (0, 1.0)
    # the negated operator reports the -1 outcome
    assert tab.measure_pauli(PauliProduct(0b11, 0, 1), rng) == (1, 1.0)


def test_tableau_matches_statevector_on_random_circuits(rng):
    for i in range(30):
        r = rng.child("case", i)
        n = 2 + r.integer(4)
        circuit = random_clifford_circuit(r.child("circ"), n, 12, measure_rate=0.0)
        tab_engine = StabilizerEngine(n)
        sv_engine = StatevectorEngine(n)
        run_circuit(tab_engine, circuit, r.child("t"))
        run_circuit(sv_engine, circuit, r.child("s"))
        tab_engine.tableau.validate()
        sv = tab_engine.tableau.to_statevector()
        overlap = abs(np.vdot(sv.amps, sv_engine.state.amps))
        assert overlap == pytest.approx(1.0, abs=1e-9)


def test_per_seed_outcome_equality(rng):
    for i in range(60):
        r = rng.child("seedcase", i)
        n = 2 + r.integer(5)
        circuit = random_clifford_circuit(r.child("circ"), n, 16)
        out_tab = run_circuit(StabilizerEngine(n), circuit, RandomStream(r.child("draws").key))
        out_sv = run_circuit(StatevectorEngine(n), circuit, RandomStream(r.child("draws").key))
        assert np.array_equal(out_tab, out_sv)


def test_non_clifford_instruction_rejected(rng):
    tab = StabilizerTableau(1)
    with pytest.raises(ValueError):
        stabilizer_run(tab, [("t", 0)], rng)


def test_psi_generators_stabilize_psi(rng):
    v, x, h = [1, 0, 1, 1], [0, 1, 1, 0], 1
    state = psi_state(v, x, h)
    for gen in psi_generators(v, x, h, ctl=0, msg=[1, 2, 3, 4]):
        bit, prob = state.copy().measure_pauli(gen.xmask, gen.zmask, gen.sign, rng)
        assert bit == 0 and prob == pytest.approx(1.0)


def test_pauli_product_rejects_y():
    with pytest.raises(ValueError):
        PauliProduct(0b1, 0b1)


def test_tableau_validate_catches_corruption():
    tab = StabilizerTableau(2)
    tab.xs[2] = tab.xs[3] = 0
    tab.zs[2] = tab.zs[3] = 0b01
    with pytest.raises(RuntimeError):
        tab.validate()
