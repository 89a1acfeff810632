"""Minimum and maximum skew rank of small graphs over prime fields."""

from .combinat import (
    ColoringState,
    Matching,
    count_perfect_matchings,
    forcing_closure,
    is_zero_forcing_set,
    matching_number,
    zero_forcing_number,
)
from .engine import (
    BadParameters,
    FieldSpec,
    Inexact,
    Mr4Classification,
    NoCutVertex,
    NotAchievable,
    RankResult,
    TraceStep,
    certify,
    classify_mr4_cut_vertex,
    cut_vertex_mr,
    kpath_mr,
    mr_bounds,
    mr_exact_structural,
    path_power_mr,
    r_v,
    replay,
)
from .formats import ParseError, ValidationError, format_graph, parse_graph
from .graph import (
    BranchDecomposition,
    Graph,
    KPathLabeling,
    Partition,
    branches_at,
    canonical_form,
    complete_graph,
    complete_multipartite,
    components,
    cut_vertices,
    cycle_graph,
    delete_vertex,
    empty_graph,
    enumerate_graphs,
    has_even_cycle,
    induced_subgraph,
    is_complete_multipartite,
    path_graph,
    path_power,
    recognize_k_path,
    star_graph,
)
from .linalg import (
    BudgetExceeded,
    PrimeField,
    RankWitness,
    SkewMatrix,
    find_rank_exhaustive,
    matrix_from_assignment,
    max_rank_exhaustive,
    max_rank_sample,
    min_rank_exhaustive,
    rank_skew,
)
from .verify import VerificationReport, run_verification

__version__ = "0.1.0"
