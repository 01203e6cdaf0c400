from eprot.tworound.protocol import (
    EprPair,
    PreparedSenderQubit,
    TwoRoundKeys,
    TwoRoundSetup,
    mr_measure,
    ms_measure,
    setup_tworound,
    tworound_params,
)
from eprot.tworound.types import Omega, Ots1, Ots1C, Ots1NC, Ots2, SigmaR, SigmaS
from eprot.tworound.c import ot1_c, ot2_c
from eprot.tworound.nc import ot1_nc, ot2_nc, ot3
from eprot.tworound.sim import (
    PrivacyAmplificationReport,
    SimEqRun,
    privacy_amplification_check,
    sim_eq,
)

__all__ = [
    "EprPair",
    "Omega",
    "Ots1",
    "Ots1C",
    "Ots1NC",
    "Ots2",
    "PreparedSenderQubit",
    "PrivacyAmplificationReport",
    "SigmaR",
    "SigmaS",
    "SimEqRun",
    "TwoRoundKeys",
    "TwoRoundSetup",
    "mr_measure",
    "ms_measure",
    "ot1_c",
    "ot1_nc",
    "ot2_c",
    "ot2_nc",
    "ot3",
    "privacy_amplification_check",
    "setup_tworound",
    "sim_eq",
    "tworound_params",
]
