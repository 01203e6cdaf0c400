"""Stabilizer tableau backend (Aaronson-Gottesman style, packed integers).

Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers.  Each row stores its
X and Z bits as Python integers (bit q = qubit q) plus a sign bit; the mod-4
phase arithmetic of Pauli multiplication stays internal to ``_rowsum``.

The backend supports exactly the Clifford vocabulary the protocols need:
X, Z, H, CNOT, standard-basis qubit measurement, and measurement of real
Pauli products (projections onto stabilizer states are expressed as
generator measurements post-selected on +1).  Anything else raises.
"""

from __future__ import annotations

from eprot.quantum.pauli import PauliProduct
from eprot.rng import RandomStream


class StabilizerTableau:
    def __init__(self, n_qubits: int):
        if n_qubits < 1:
            raise ValueError("need at least one qubit")
        self.n = n_qubits
        # destabilizer i = X_i, stabilizer i = Z_i  (state |0...0>)
        self.xs = [1 << i for i in range(n_qubits)] + [0] * n_qubits
        self.zs = [0] * n_qubits + [1 << i for i in range(n_qubits)]
        self.rs = [0] * (2 * n_qubits)

    def copy(self) -> "StabilizerTableau":
        out = StabilizerTableau.__new__(StabilizerTableau)
        out.n = self.n
        out.xs = list(self.xs)
        out.zs = list(self.zs)
        out.rs = list(self.rs)
        return out

    # -- gates ------------------------------------------------------------

    def apply_h(self, q: int) -> None:
        mask = 1 << q
        for i in range(2 * self.n):
            x, z = self.xs[i], self.zs[i]
            if x & z & mask:
                self.rs[i] ^= 1
            xb, zb = x & mask, z & mask
            self.xs[i] = (x & ~mask) | zb
            self.zs[i] = (z & ~mask) | xb

    def apply_x(self, q: int) -> None:
        mask = 1 << q
        for i in range(2 * self.n):
            if self.zs[i] & mask:
                self.rs[i] ^= 1

    def apply_z(self, q: int) -> None:
        mask = 1 << q
        for i in range(2 * self.n):
            if self.xs[i] & mask:
                self.rs[i] ^= 1

    def apply_cnot(self, control: int, target: int) -> None:
        if control == target:
            raise ValueError("CNOT control and target must differ")
        cm, tm = 1 << control, 1 << target
        for i in range(2 * self.n):
            x, z = self.xs[i], self.zs[i]
            xa = (x >> control) & 1
            zb = (z >> target) & 1
            if xa & zb:
                xb = (x >> target) & 1
                za = (z >> control) & 1
                self.rs[i] ^= xb ^ za ^ 1
            if xa:
                self.xs[i] = x ^ tm
            if zb:
                self.zs[i] = z ^ cm

    # -- Pauli algebra ----------------------------------------------------

    @staticmethod
    def _phase_count(x1: int, z1: int, x2: int, z2: int) -> int:
        """Sum over qubits of the i-exponent when multiplying row1 * row2."""
        y1 = x1 & z1
        x1o = x1 ^ y1
        z1o = z1 ^ y1
        y2 = x2 & z2
        x2o = x2 ^ y2
        z2o = z2 ^ y2
        plus = (y1 & z2o) | (x1o & y2) | (z1o & x2o)
        minus = (y1 & x2o) | (x1o & z2o) | (z1o & y2)
        return plus.bit_count() - minus.bit_count()

    def _rowsum(self, h: int, i: int) -> None:
        """Row h := (row i) * (row h), with sign tracking."""
        phase = 2 * self.rs[h] + 2 * self.rs[i]
        phase += self._phase_count(self.xs[i], self.zs[i], self.xs[h], self.zs[h])
        phase %= 4
        if phase & 1:
            raise RuntimeError("tableau corrupted: odd phase in rowsum")
        self.rs[h] = phase >> 1
        self.xs[h] ^= self.xs[i]
        self.zs[h] ^= self.zs[i]

    def _anticommutes(self, i: int, xp: int, zp: int) -> bool:
        return ((xp & self.zs[i]).bit_count() + (zp & self.xs[i]).bit_count()) & 1 == 1

    # -- measurement ------------------------------------------------------

    def measure_pauli(self, pauli: PauliProduct, rng: RandomStream) -> tuple[int, float]:
        """Measure a real Pauli product; returns (bit, branch probability).

        Bit 0 means the +1 eigenvalue of the signed operator.  A random
        outcome consumes one uniform draw (outcome 1 iff u < 1/2), matching
        the statevector backend's draw pattern on Clifford states.
        """
        xp, zp, sp = pauli.xmask, pauli.zmask, pauli.sign
        n = self.n
        p = -1
        for i in range(n, 2 * n):
            if self._anticommutes(i, xp, zp):
                p = i
                break
        if p >= 0:
            outcome = 1 if rng.uniform() < 0.5 else 0
            # row p - n is the one row that anticommutes with row p (their
            # product would carry a +-i phase); it is overwritten below, so
            # skip it rather than track imaginary destabilizer phases
            for q in range(2 * n):
                if q != p and q != p - n and self._anticommutes(q, xp, zp):
                    self._rowsum(q, p)
            self.xs[p - n] = self.xs[p]
            self.zs[p - n] = self.zs[p]
            self.rs[p - n] = self.rs[p]
            self.xs[p] = xp
            self.zs[p] = zp
            self.rs[p] = outcome ^ sp
            return outcome, 0.5
        # deterministic: accumulate stabilizer rows flagged by destabilizers
        ax, az, aphase = 0, 0, 0
        for i in range(n):
            if self._anticommutes(i, xp, zp):
                aphase += 2 * self.rs[n + i]
                aphase += self._phase_count(self.xs[n + i], self.zs[n + i], ax, az)
                ax ^= self.xs[n + i]
                az ^= self.zs[n + i]
        if ax != xp or az != zp:
            raise RuntimeError("tableau corrupted: deterministic Pauli mismatch")
        aphase %= 4
        if aphase & 1:
            raise RuntimeError("tableau corrupted: odd phase in measurement")
        outcome = (aphase >> 1) ^ sp
        return outcome, 1.0

    def measure_qubit(self, q: int, rng: RandomStream) -> tuple[int, float]:
        return self.measure_pauli(PauliProduct.z(q), rng)

    # -- diagnostics --------------------------------------------------------

    def validate(self) -> None:
        """Check pairwise commutation of stabilizers and full tableau rank."""
        n = self.n
        for i in range(n, 2 * n):
            for j in range(i + 1, 2 * n):
                if ((self.xs[i] & self.zs[j]).bit_count() + (self.zs[i] & self.xs[j]).bit_count()) & 1:
                    raise RuntimeError("stabilizer rows do not commute")
        rows = [(self.xs[i] << n) | self.zs[i] for i in range(2 * n)]
        rank = 0
        for bit in range(2 * n):
            pivot = None
            for idx in range(rank, len(rows)):
                if (rows[idx] >> (2 * n - 1 - bit)) & 1:
                    pivot = idx
                    break
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            for idx in range(len(rows)):
                if idx != rank and (rows[idx] >> (2 * n - 1 - bit)) & 1:
                    rows[idx] ^= rows[rank]
            rank += 1
        if rank != 2 * n:
            raise RuntimeError("tableau rank deficient")

    def stabilizer_labels(self) -> list[str]:
        out = []
        for i in range(self.n, 2 * self.n):
            row = PauliProduct.__new__(PauliProduct)
            object.__setattr__(row, "xmask", self.xs[i])
            object.__setattr__(row, "zmask", self.zs[i])
            object.__setattr__(row, "sign", self.rs[i])
            out.append(row.label(self.n))
        return out

    def to_statevector(self):
        """Dense statevector of the stabilized state (small n, tests only)."""
        import numpy as np

        from eprot.quantum.state import PureState, _mask_to_index, _popcount_array

        n = self.n
        dim = 1 << n
        seed_gen = np.random.default_rng(0x5EED)
        vec = seed_gen.normal(size=dim) + 1j * seed_gen.normal(size=dim)
        vec = vec / np.linalg.norm(vec)
        idx = np.arange(dim)
        for i in range(n, 2 * n):
            x, z, r = self.xs[i], self.zs[i], self.rs[i]
            xflip = _mask_to_index(x, n)
            zbits = _mask_to_index(z, n)
            # rows may carry Y components; the row represents i^{|Y|} X^x Z^z
            phase_const = 1j ** ((x & z).bit_count())
            phases = phase_const * (1.0 - 2.0 * (_popcount_array((idx ^ xflip) & zbits) & 1))
            applied = phases * vec[idx ^ xflip]
            if r:
                applied = -applied
            vec = (vec + applied) / 2.0
            norm = np.linalg.norm(vec)
            if norm < 1e-12:
                raise RuntimeError("projector product annihilated the seed vector")
            vec = vec / norm
        return PureState(n, vec)
