"""Real Pauli products as packed bit masks.

A :class:`PauliProduct` is (-1)^sign * prod_q X_q^{x} Z_q^{z} with the x and z
masks disjoint (no Y factors); this is exactly the family the protocols
measure, and keeping Y out makes every product Hermitian without phase
bookkeeping.  Bit q of a mask refers to qubit q.
"""

from __future__ import annotations

from dataclasses import dataclass

from eprot import bits as bt


@dataclass(frozen=True)
class PauliProduct:
    xmask: int
    zmask: int
    sign: int = 0

    def __post_init__(self):
        if self.xmask & self.zmask:
            raise ValueError("x and z masks must be disjoint (no Y factors)")
        if self.sign not in (0, 1):
            raise ValueError("sign must be 0 (+) or 1 (-)")

    @classmethod
    def z(cls, q: int, sign: int = 0) -> "PauliProduct":
        return cls(0, 1 << q, sign)

    @classmethod
    def x(cls, q: int, sign: int = 0) -> "PauliProduct":
        return cls(1 << q, 0, sign)

    def shifted(self, offset: int) -> "PauliProduct":
        return PauliProduct(self.xmask << offset, self.zmask << offset, self.sign)

    def label(self, n_qubits: int) -> str:
        chars = []
        for q in range(n_qubits):
            x = (self.xmask >> q) & 1
            z = (self.zmask >> q) & 1
            chars.append("X" if x else "Z" if z else "I")
        return ("-" if self.sign else "+") + "".join(chars)


def psi_generators(v, x, h: int, ctl: int, msg: list[int]) -> list[PauliProduct]:
    """Stabilizer generators of (|0,v> + (-1)^h |1, v xor x>)/sqrt(2).

    ``ctl`` and ``msg`` give the qubit indices holding the control bit and the
    message bits, so the generators can target a sub-register of a larger
    state.  Projecting onto the state = measuring all 1+len(v) generators and
    accepting only +1 outcomes.
    """
    v = bt.as_bits(v)
    x = bt.as_bits(x)
    if len(v) != len(x) or len(msg) != len(v):
        raise ValueError("v, x and msg must have equal length")
    gens = []
    xflip = 1 << ctl
    for j, bit in enumerate(x):
        if bit:
            xflip |= 1 << msg[j]
    gens.append(PauliProduct(xflip, 0, int(h)))
    for j in range(len(v)):
        if x[j]:
            gens.append(PauliProduct(0, (1 << ctl) | (1 << msg[j]), int(v[j])))
        else:
            gens.append(PauliProduct(0, 1 << msg[j], int(v[j])))
    return gens
