"""Wire and state types of the two-round OT, free of any crypto imports.

Keeping these neutral lets the input-dependent algorithms (the NC side of
the split) consume them without touching commitment, hash, or proof code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class SigmaR:
    """Receiver measurement record: basis choices and both measured bits per index."""

    theta: np.ndarray  # ell bits
    v: np.ndarray  # ell x 2 bits; v[i, j] from pair (i, j)


@dataclass
class SigmaS:
    """Sender measurement record: the checked subset, its bases, and all bits."""

    u_set: list[int]
    theta_s: dict[int, int]  # basis per checked index
    v: np.ndarray  # ell x 2 bits


@dataclass
class Ots1C:
    cms: list
    t_subsets: tuple
    t_indices: list[int]
    openings: dict[int, tuple[int, int, int, np.ndarray]]  # i -> (theta, v0, v1, r)


@dataclass
class Ots1NC:
    d: dict[int, int]  # i in T-bar -> masked basis bit


@dataclass
class Ots1:
    c: Ots1C
    nc: Ots1NC


@dataclass
class Omega:
    """The receiver's retained secret: (claimed basis, kept bit) per unopened index."""

    entries: dict[int, tuple[int, int]]


@dataclass
class Ots2:
    hash_seed: bytes
    u_set: list[int]
    m0_masked: np.ndarray
    m1_masked: np.ndarray
