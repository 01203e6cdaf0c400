import numpy as np
import pytest

from eprot.quantum import DensityMatrix, PureState, make_epr, partial_trace, trace_distance
from eprot.quantum.random_states import random_near_projector_pair


def _pure_dm(amps) -> DensityMatrix:
    amps = np.asarray(amps, dtype=complex)
    n = int(np.log2(len(amps)))
    return PureState(n, amps).density()


def test_partial_trace_bell_is_maximally_mixed():
    reduced = partial_trace(make_epr(1).density(), keep=[0])
    assert np.allclose(reduced.matrix, np.eye(2) / 2)


def test_partial_trace_keep_all_is_identity_map():
    dm = make_epr(1).density()
    assert np.allclose(partial_trace(dm, [0, 1]).matrix, dm.matrix)


def test_partial_trace_product_state():
    zero = np.array([1, 0], dtype=complex)
    plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
    dm = _pure_dm(np.kron(zero, plus))
    reduced = partial_trace(dm, keep=[1])
    assert np.allclose(reduced.matrix, np.outer(plus, plus.conj()))


def test_partial_trace_preserves_trace_and_positivity(rng):
    from eprot.quantum.random_states import random_mixed_state

    for i in range(20):
        dm = random_mixed_state(rng.child(i), 3)
        reduced = partial_trace(dm, [0, 2])
        assert abs(np.trace(reduced.matrix).real - 1.0) < 1e-9
        assert np.linalg.eigvalsh(reduced.matrix).min() > -1e-9


def test_trace_distance_examples():
    zero = _pure_dm([1, 0])
    one = _pure_dm([0, 1])
    plus = _pure_dm(np.array([1, 1]) / np.sqrt(2))
    assert trace_distance(zero, zero) == pytest.approx(0.0, abs=1e-12)
    assert trace_distance(zero, one) == pytest.approx(1.0)
    assert trace_distance(zero, plus) == pytest.approx(1 / np.sqrt(2))


def test_trace_distance_dimension_mismatch():
    with pytest.raises(ValueError):
        trace_distance(_pure_dm([1, 0]), make_epr(1).density())


def test_density_validation():
    with pytest.raises(ValueError):
        DensityMatrix(1, np.array([[1.0, 0.5], [0.2, 0.0]]))
    with pytest.raises(ValueError):
        DensityMatrix(1, np.array([[0.7, 0.0], [0.0, 0.7]]))
    with pytest.raises(ValueError):
        DensityMatrix(1, np.array([[1.5, 0.0], [0.0, -0.5]]))


def test_gentle_measurement_bound(rng):
    """A near-certain projective outcome disturbs the state by at most
    2 sqrt(delta) in trace distance; checked over random rank-1-extended
    projectors with delta defined as the actual rejection probability."""
    violations = 0
    for i in range(200):
        dm, proj = random_near_projector_pair(rng.child(i))
        delta = 1.0 - float(np.trace(proj @ dm.matrix).real)
        if delta >= 1.0 - 1e-12:
            continue
        post = proj @ dm.matrix @ proj / (1.0 - delta)
        td = trace_distance(dm, DensityMatrix(dm.n_qubits, post, validate=False))
        if td > 2 * np.sqrt(max(delta, 0.0)) + 1e-9:
            violations += 1
    assert violations == 0
