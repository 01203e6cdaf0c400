from eprot.oneshot.protocol import (
    Collection,
    HybridConfig,
    OneShotSetup,
    ReceiverOutput,
    ReceiverView,
    SenderMessage,
    encode_commitments,
    receiver_receive,
    sender_send,
    setup,
    shared_uniform_bits,
    skeleton_receiver,
    skeleton_sender,
)
from eprot.oneshot.adversary import AdversaryStrategy, adversary_send
from eprot.oneshot.simulators import (
    GammaProjector,
    build_gamma_projector,
    run_exp2,
    sim_receiver_side,
    sim_sender_side,
)
from eprot.oneshot.analysis import (
    claim_rejection_bound,
    exact_parity_bias,
    parity_joint_td,
    product_check_acceptance,
    xor_extractor_exact_td,
)

__all__ = [
    "AdversaryStrategy",
    "Collection",
    "GammaProjector",
    "HybridConfig",
    "OneShotSetup",
    "ReceiverOutput",
    "ReceiverView",
    "SenderMessage",
    "adversary_send",
    "build_gamma_projector",
    "claim_rejection_bound",
    "encode_commitments",
    "exact_parity_bias",
    "parity_joint_td",
    "product_check_acceptance",
    "receiver_receive",
    "run_exp2",
    "sender_send",
    "setup",
    "shared_uniform_bits",
    "sim_receiver_side",
    "sim_sender_side",
    "skeleton_receiver",
    "skeleton_sender",
    "xor_extractor_exact_td",
]
