"""Desk-scale simulator for oblivious transfer over shared EPR pairs.

Subpackages:

- ``eprot.quantum``   small-qubit state engine (statevector + stabilizer backends)
- ``eprot.crypto``    simulation-grade commitments, programmable subset hash,
  idealized proofs, PRG and Toeplitz universal hashing
- ``eprot.relations`` exact product-relation machinery and parameter arithmetic
- ``eprot.oneshot``   the one-shot random-receiver-bit string OT protocol,
  scripted adversaries and both security simulators
- ``eprot.tworound``  the two-round chosen-input OT with its C/NC split
- ``eprot.harness``   deterministic seeding, Monte-Carlo statistics, transcripts
  and the command line interface
"""

from eprot.rng import RandomStream

__all__ = ["RandomStream"]
__version__ = "0.1.0"
