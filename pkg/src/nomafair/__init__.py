"""Uplink NOMA vs OMA fairness: rates, Jain's index, the Lambert-W fairness
threshold, the hybrid NOMA-OMA scheme and a Monte Carlo cell simulator."""

__version__ = "0.1.0"

from .rates import (
    NOMA,
    OMA,
    FairnessContext,
    RateAllocation,
    UserChannels,
    dbm_to_mw,
    f_map,
    g_map,
    make_channels,
    noma_rates,
    normalized_gains,
    oma_rates,
    sum_rate,
)
from .fairness import (
    FairnessDecision,
    beta_exact,
    beta_high_snr,
    fairness_threshold,
    jains_index,
    lambert_w0,
    lambert_w0_log,
    noma_more_fair,
    ssr_noma,
    ssr_oma,
)
from .region import RatePair, RegionBoundary, noma_boundary, noma_corners, oma_boundary, region_contains
from .channel import NetworkDrop, SimConfig, channel_gain, drop_users, generate_drop, path_loss_db, random_pairing
from .experiments import (
    HYBRID,
    DistributionResult,
    SweepResult,
    hybrid_select,
    percentile,
    run_distribution,
    run_fairness_sweep,
)
