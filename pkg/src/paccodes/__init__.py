"""Polarization-adjusted convolutional (PAC) codes.

Encoding (rate profiling, convolutional precoding, polar transform),
successive-cancellation list decoding with optional node-level shortcuts,
a seeded AWGN block-error-rate simulator, and a decoding-latency cycle
model. Dense GF(2) reference implementations for every fast path live in
paccodes.reference.
"""

__version__ = "0.1.0"

from .channel import (
    ChannelConfig,
    DecoderSetup,
    PairedResult,
    SimResult,
    channel_llrs,
    paired_compare,
    run_bler,
    wilson_interval,
)
from .codec import (
    CodeSpec,
    bundled_profiles,
    conv_1b_trans,
    conv_inverse,
    conv_trans,
    crc_attach,
    crc_check,
    inverse_gen_poly,
    load_profile,
    pac_encode,
    parse_gen_poly,
    polar_transform,
    rate_profile,
)
from .decoding import (
    LLR_MAX,
    DecodePath,
    DecodeResult,
    DecoderConfig,
    combine_partial,
    expand_and_prune,
    f_combine,
    g_combine,
    pm_update_leaf,
    scl_decode,
)
from .latency import (
    LatencyReport,
    NodeStats,
    enumerate_special_nodes,
    latency_report,
    scl_cycles,
    sscl_cycles,
)
from .nodes import (
    NodeCandidate,
    NodeClass,
    NodePolicy,
    classify_node,
    node_pm,
    process_rate0,
    process_rate1,
    process_rep,
    process_spc,
    rate1_candidates,
    spc_candidates,
    sscl_decode,
)

__all__ = [
    "__version__",
    "CodeSpec",
    "rate_profile",
    "conv_1b_trans",
    "conv_trans",
    "polar_transform",
    "pac_encode",
    "inverse_gen_poly",
    "conv_inverse",
    "crc_attach",
    "crc_check",
    "parse_gen_poly",
    "load_profile",
    "bundled_profiles",
    "LLR_MAX",
    "DecoderConfig",
    "DecodePath",
    "DecodeResult",
    "f_combine",
    "g_combine",
    "combine_partial",
    "pm_update_leaf",
    "expand_and_prune",
    "scl_decode",
    "NodeClass",
    "NodePolicy",
    "NodeCandidate",
    "classify_node",
    "node_pm",
    "process_rate0",
    "process_rep",
    "rate1_candidates",
    "process_rate1",
    "spc_candidates",
    "process_spc",
    "sscl_decode",
    "LatencyReport",
    "NodeStats",
    "enumerate_special_nodes",
    "scl_cycles",
    "sscl_cycles",
    "latency_report",
    "ChannelConfig",
    "SimResult",
    "PairedResult",
    "DecoderSetup",
    "channel_llrs",
    "wilson_interval",
    "run_bler",
    "paired_compare",
]
