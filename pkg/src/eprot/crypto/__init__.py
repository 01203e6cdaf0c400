from eprot.crypto.commitment import (
    Commitment,
    CommitmentScheme,
    CommitKey,
    ExtractKey,
)
from eprot.crypto.cihash import (
    CIHashKey,
    ci_hash,
    ci_samp,
    product_rank,
    product_unrank,
    sample_hash_key,
    subset_rank,
    subset_unrank,
    t_subset_to_indices,
)
from eprot.crypto.group import GroupParams, group_for_bits
from eprot.crypto.nizk import (
    NizkCrs,
    NizkProof,
    OneshotStatement,
    OneshotWitness,
    check_witness,
    nizk_crs_gen,
    nizk_prove,
    nizk_sim,
    nizk_verify,
)
from eprot.crypto.prg import expand_bytes, prg_expand
from eprot.crypto.uhash import (
    UHashKey,
    sample_uhash_key,
    toeplitz_diagonal,
    uhash,
    uhash_from_diagonal,
)

__all__ = [
    "CIHashKey",
    "CommitKey",
    "Commitment",
    "CommitmentScheme",
    "ExtractKey",
    "GroupParams",
    "NizkCrs",
    "NizkProof",
    "OneshotStatement",
    "OneshotWitness",
    "UHashKey",
    "check_witness",
    "ci_hash",
    "sample_uhash_key",
    "ci_samp",
    "expand_bytes",
    "group_for_bits",
    "nizk_crs_gen",
    "nizk_prove",
    "nizk_sim",
    "nizk_verify",
    "prg_expand",
    "product_rank",
    "product_unrank",
    "sample_hash_key",
    "subset_rank",
    "subset_unrank",
    "t_subset_to_indices",
    "toeplitz_diagonal",
    "uhash",
    "uhash_from_diagonal",
]
