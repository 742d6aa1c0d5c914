"""PAC code workbench: encoding, SCL decoding, BI-AWGN simulation and
Q-learning rate-profile construction."""

from ._core import (  # noqa: F401
    __version__,
    Candidate,
    ChannelConfig,
    CodeParams,
    DecodeResult,
    DecoderConfig,
    DecoderSession,
    EpisodeOutcome,
    EpisodeRecord,
    Kernel,
    MazeState,
    Partition,
    Precoder,
    QTable,
    RateProfile,
    SimConfig,
    SimResult,
    SnrPointResult,
    StepReport,
    TrainConfig,
    TrainReport,
    conv_precode,
    conv_precode_inverse,
    decode,
    epsilon_at,
    extract_profile,
    llr_vector,
    next_state,
    pac_encode,
    polar_transform,
    rate_profile_map,
    reward,
    rm_score,
    rm_score_partition,
    run_episode,
    run_fer,
    sigma_from_ebn0,
    train,
    transmit,
    update_q,
)
