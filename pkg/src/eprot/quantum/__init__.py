from eprot.quantum.state import (
    DensityMatrix,
    PureState,
    RegisterLayout,
    apply_gate,
    make_epr,
    measure,
    partial_trace,
    project,
    psi_state,
    trace_distance,
    xor_extract,
)
from eprot.quantum.pauli import PauliProduct, psi_generators
from eprot.quantum.tableau import StabilizerTableau
from eprot.quantum.backend import (
    StabilizerEngine,
    StatevectorEngine,
    make_engine,
    run_circuit,
    stabilizer_run,
)

__all__ = [
    "DensityMatrix",
    "PureState",
    "RegisterLayout",
    "PauliProduct",
    "StabilizerTableau",
    "StabilizerEngine",
    "StatevectorEngine",
    "apply_gate",
    "make_engine",
    "make_epr",
    "measure",
    "partial_trace",
    "project",
    "psi_generators",
    "psi_state",
    "run_circuit",
    "stabilizer_run",
    "trace_distance",
    "xor_extract",
]
