"""Parallel label-propagation community detection whose output communities
are guaranteed internally connected, with splitters, a disconnection
auditor, modularity metrics, and a benchmark CLI."""

from .connectivity import (
    DisjointSet,
    community_sizes,
    disconnected_communities,
    fraction_disconnected,
    oracle_components,
)
from .graph import (
    EdgeListSpec,
    Graph,
    GraphFormatError,
    build_graph,
    ensure_labels,
    load_edgelist,
    load_mtx,
)
from .lpa import (
    SPLIT_STRATEGIES,
    LabelAccumulator,
    LpaParams,
    RunReport,
    best_label,
    lpa,
    lpa_move,
    scan_communities,
)
from .metrics import (
    CommunityAggregates,
    ModularityUndefinedError,
    community_aggregates,
    modularity,
    modularity_edge_form,
    summarize,
)
from .split import SplitResult, split_bfs, split_lp

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "EdgeListSpec",
    "GraphFormatError",
    "build_graph",
    "load_edgelist",
    "load_mtx",
    "ensure_labels",
    "LpaParams",
    "LabelAccumulator",
    "RunReport",
    "SPLIT_STRATEGIES",
    "lpa",
    "lpa_move",
    "scan_communities",
    "best_label",
    "SplitResult",
    "split_lp",
    "split_bfs",
    "community_sizes",
    "disconnected_communities",
    "fraction_disconnected",
    "oracle_components",
    "DisjointSet",
    "CommunityAggregates",
    "ModularityUndefinedError",
    "community_aggregates",
    "modularity",
    "modularity_edge_form",
    "summarize",
    "__version__",
]
