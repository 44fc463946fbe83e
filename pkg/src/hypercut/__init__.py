"""Exact generalized hypergraph s-t and multiway cuts via gadget reductions."""
from .errors import (
    ArityTooLarge,
    HypercutError,
    NotModelable,
    NotReducible,
    NotSubmodular,
    ParseError,
    SeedNotFound,
    SeedsAdjacentWarning,
    SizeLimitError,
    TooLarge,
    TooManyAux,
)
from .hypergraph import CutSolution, Hyperedge, Hypergraph, cut_value, make_edge, validate
from .numeric import INF, as_rational, fmt
from .reduction import emit_dimacs, reduce_st, solve_st
from .oracle import brute_multiway, brute_st_cut
from .splitting import (
    AsymmetricCB,
    GeneralTable,
    NeedyNode,
    SymmetricCB,
    classify,
    evaluate,
    is_submodular,
    is_submodular_asym,
    is_submodular_cb,
    is_submodular_table,
)
from .multiway import (
    ClusterBased,
    MoveBased,
    NodeWeightedGraph,
    SignatureBased,
    evaluate_multiway,
    reduce_multiway,
    solve_multiway,
    solve_nwmc_exact,
    solve_nwmc_isolating,
)

__version__ = "0.1.0"
