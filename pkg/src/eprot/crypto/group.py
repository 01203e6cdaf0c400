"""Prime-order subgroups of Z_p^* for the extractable commitment.

Safe primes p = 2q + 1 are precomputed per bit length; the working group is
the order-q subgroup of quadratic residues, generated by g = 4 (any QR other
than 1 generates, since q is prime).  512 bits is the default; 64 bits keeps
property tests fast.
"""

from __future__ import annotations

from dataclasses import dataclass

_SAFE_PRIMES = {
    64: 0x877EED7F49583857,
    128: 0x8BF2ED7771FE65A017C3AAE0837B4233,
    256: 0x94E9D76AAD5F0EB6F6CE64608C43D203EACFF10278B1BAA976D4C782DB591807,
    512: 0xE3027D4F34E479E395FCFC84B5DC52FD47CECC0AF51811CCC50C06E6F1CAA6B1662305D01E0813E46160434EC5E509727489B9DB6BE911D75F633B609FDFA51B,
}


@dataclass(frozen=True)
class GroupParams:
    bits: int
    p: int  # safe prime
    q: int  # subgroup order, (p - 1) / 2
    g: int  # generator of the order-q subgroup

    def element_bytes(self) -> int:
        return (self.p.bit_length() + 7) // 8

    def encode(self, element: int) -> bytes:
        return element.to_bytes(self.element_bytes(), "big")

    def pow_g(self, exponent: int) -> int:
        return pow(self.g, exponent, self.p)


def group_for_bits(bits: int = 512) -> GroupParams:
    if bits not in _SAFE_PRIMES:
        raise ValueError(f"no group parameters for {bits} bits; have {sorted(_SAFE_PRIMES)}")
    p = _SAFE_PRIMES[bits]
    return GroupParams(bits=bits, p=p, q=(p - 1) // 2, g=4)
