"""Metric geometry of the symmetric group under the transposition word metric."""

from .coding import (
    KeySystem,
    MidpointPair,
    curved_injection,
    decode_key,
    derived_key,
    encode_pair,
    encode_point,
    fibre_set,
    flat_injection,
    select_keys,
)
from .geodesic import (
    CrossoverSet,
    NoncrossingProduct,
    crossovers,
    crossovers_bfs,
    dual,
    dual_set,
    is_midpoint,
    midpoint_set,
    narayana,
    noncrossing_partitions,
    noncrossing_products,
)
from .lab import (
    ConflictGraph,
    ExperimentReport,
    bm_curved_check,
    bm_flat_check,
    conflict_graph,
    default_curvature,
    epsilon_estimate,
    hypercube_embed,
    max_separated_set,
    sample_subsets,
    set_distance,
    verify_suite,
)
from .perms import (
    Composition,
    DegreeLimitError,
    DegreeMismatchError,
    Permutation,
    canonical_permutation,
    compose,
    conjugate,
    cycle_minima,
    cycle_string,
    distance,
    distance_bfs_oracle,
    enumerate_compositions,
    enumerate_group,
    from_cycles,
    identity,
    inverse,
    ordered_cycle_factorization,
    ordered_cycle_type,
    transport,
    transposition,
)

__version__ = "0.1.0"

__all__ = [
    "Composition",
    "ConflictGraph",
    "CrossoverSet",
    "DegreeLimitError",
    "DegreeMismatchError",
    "ExperimentReport",
    "KeySystem",
    "MidpointPair",
    "NoncrossingProduct",
    "Permutation",
    "bm_curved_check",
    "bm_flat_check",
    "canonical_permutation",
    "compose",
    "conflict_graph",
    "conjugate",
    "crossovers",
    "crossovers_bfs",
    "curved_injection",
    "cycle_minima",
    "cycle_string",
    "decode_key",
    "default_curvature",
    "derived_key",
    "distance",
    "distance_bfs_oracle",
    "dual",
    "dual_set",
    "encode_pair",
    "encode_point",
    "enumerate_compositions",
    "enumerate_group",
    "epsilon_estimate",
    "fibre_set",
    "flat_injection",
    "from_cycles",
    "hypercube_embed",
    "identity",
    "inverse",
    "is_midpoint",
    "max_separated_set",
    "midpoint_set",
    "narayana",
    "noncrossing_partitions",
    "noncrossing_products",
    "ordered_cycle_factorization",
    "ordered_cycle_type",
    "sample_subsets",
    "select_keys",
    "set_distance",
    "transport",
    "transposition",
    "verify_suite",
]
