"""QC-LDPC codes free of theta-graph patterns.

Design (randomized search with violation repair), verification (girth and
theta patterns at the exponent and lifted levels), extremal-graph bounds
with exhaustive oracles, trapping-set enumeration, and sum-product FER
simulation over BPSK/AWGN.
"""

__version__ = "0.1.0"

from .cycles import (
    BlockChain,
    ThetaWitness,
    chain_sum,
    count_zero_chains,
    enumerate_chains,
    find_shared_check_six_cycles,
    find_theta122,
    find_theta222,
    find_theta222_exponent,
    girth_exponent,
    girth_lifted,
    validate_witness,
)
from .designer import (
    SearchConfig,
    SearchReport,
    ViolationReport,
    check_constraints,
    h1,
    h2,
    search,
)
from .ets import (
    EtsInstance,
    EtsSearchResult,
    VnConstraintSet,
    ets_tanner_graph,
    feasible_vn_graphs,
    find_ets_in_code,
    min_ets_size,
)
from .exponent import INF, ExponentMatrix, ParseError, format_exponent_matrix, parse_exponent_matrix
from .simulate import (
    DecoderConfig,
    FerPoint,
    SpaDecoder,
    awgn_llrs,
    code_rates,
    estimate_fer,
    gf2_rank,
    spa_decode,
    syndrome,
)
from .tanner import (
    GirthViolation,
    TannerGraph,
    VNGraph,
    build_vn_adjacency,
    export_alist,
    lift,
    parse_alist,
)
from .turan import (
    BoundQuery,
    TuranResult,
    a_threshold_g8,
    admissible,
    brute_force_ex,
    ets_bound,
    ex_theta122,
    ex_upper_c3_theta222,
    floor_ex_upper_c3_theta222,
    min_a_for_b,
    parity_admissible,
)
