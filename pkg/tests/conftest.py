from fractions import Fraction

import pytest

from eprot.relations import ProtocolParams
from eprot.rng import RandomStream


@pytest.fixture
def rng():
    return RandomStream.from_seed("e0" * 32)


@pytest.fixture
def desk():
    """The default one-shot working point: 18 qubits per collection, ell = 32."""
    return ProtocolParams(lam=4, lam_ci=4, alpha=Fraction(1, 8), c=16, t=2, group_bits=64)


@pytest.fixture
def tiny():
    """Small enough for dense cross-checks and high trial counts: ell = 8."""
    return ProtocolParams(lam=2, lam_ci=2, alpha=Fraction(1, 4), c=4, t=2, group_bits=64)
