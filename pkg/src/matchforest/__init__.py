"""Matching forests and mixed edge covers in mixed graphs: validity,
Gallai-type duality, minimum weight covers, polyhedral checks, and
equitable partitions."""
from .errors import (
    BudgetExceeded,
    DomainError,
    GraphValidationError,
    InfeasibleExchange,
    MatchForestError,
    UsageError,
)
from .graph_core import ElementId, MixedGraph, arc_ids, covered, edge_ids, heads
from .kernels import BACKEND as KERNEL_BACKEND
from .partition import EqualizeMode, PartitionReport
from .structures import (
    StructureKind,
    is_branching,
    is_matching,
    is_matching_forest,
    is_mixed_covering_forest,
    is_mixed_edge_cover,
    is_perfect_matching_forest,
    is_structure,
    minimalize_mec,
    root_set,
)
from .branching_exchange import RootExchangeRequest, exchange_feasible, exchange_roots
from .mf_equalize import equalize_pair_mf, equitable_partition_mf
from .mec_equalize import distribute_leftovers, equalize_pair_mec, equitable_partition_mec
from .extensions import (
    PartitionableDigraph,
    bibranching_to_mixed,
    equitable_partition_bibranchings,
    is_bibranching,
    pack_covering_forests,
)
from .optimum import (
    MixSize,
    gallai,
    max_matching_forest,
    mec_to_mf,
    mf_to_mec_cover,
    min_mixed_edge_cover,
    min_weight_mec,
)
from .textformat import parse_graph, serialize

__version__ = "0.1.0"
