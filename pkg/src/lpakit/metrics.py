"""Partition quality metrics: modularity and summary statistics.

Modularity is computed two ways. The production route aggregates
per-community internal and total arc weights in one vectorized pass; the
validation route sums the per-pair form over a dense adjacency matrix and
exists so the two can be checked against each other. Both follow the
symmetric-storage convention: each undirected intra-community edge
contributes its weight in both stored directions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .connectivity import community_sizes, disconnected_communities, fraction_disconnected
from .graph import Graph, ensure_labels

__all__ = [
    "ModularityUndefinedError",
    "CommunityAggregates",
    "community_aggregates",
    "modularity",
    "modularity_edge_form",
    "summarize",
]


class ModularityUndefinedError(ValueError):
    """Modularity is undefined for a graph with no edges (m = 0)."""


@dataclass(frozen=True)
class CommunityAggregates:
    """Per-community arc-weight sums, indexed by community label.

    internal_weight: weight of arcs with both endpoints in the community
        (both stored directions counted).
    total_weight: weight of arcs whose source lies in the community; sums
        to 2m over all communities.
    """

    internal_weight: np.ndarray
    total_weight: np.ndarray


def community_aggregates(g: Graph, c) -> CommunityAggregates:
    community = ensure_labels(g, c)
    n = g.num_vertices
    src_label = community[g.arc_sources()]
    dst_label = community[g.targets]
    total = np.bincount(src_label, weights=g.weights, minlength=n)
    internal_mask = src_label == dst_label
    internal = np.bincount(
        src_label[internal_mask], weights=g.weights[internal_mask], minlength=n
    )
    return CommunityAggregates(internal_weight=internal, total_weight=total)


def modularity(g: Graph, c) -> float:
    """Intra-community weight fraction minus its random-graph expectation,
    summed per community. Raises ModularityUndefinedError when m = 0."""
    if not g.total_weight_half > 0:
        raise ModularityUndefinedError("modularity is undefined for an edgeless graph")
    agg = community_aggregates(g, c)
    two_m = 2.0 * g.total_weight_half
    return float(np.sum(agg.internal_weight / two_m - (agg.total_weight / two_m) ** 2))


def modularity_edge_form(g: Graph, c) -> float:
    """Validation route: per-pair summation over a dense adjacency matrix.

    Sums (w_ij - K_i*K_j / 2m) / 2m over all ordered same-community vertex
    pairs, recomputing weights and degrees from the dense matrix. Allocates
    N*N floats, so keep it to small graphs.
    """
    if not g.total_weight_half > 0:
        raise ModularityUndefinedError("modularity is undefined for an edgeless graph")
    community = ensure_labels(g, c)
    n = g.num_vertices
    adj = np.zeros((n, n), dtype=np.float64)
    adj[g.arc_sources(), g.targets] = g.weights
    degrees = adj.sum(axis=1)
    two_m = adj.sum()
    same = community[:, None] == community[None, :]
    return float(((adj - np.outer(degrees, degrees) / two_m) * same).sum() / two_m)


def summarize(g: Graph, c, *, worker_count: int = 1, chunk_size: int = 1024) -> dict:
    """Partition summary: community count, size stats, modularity (None when
    undefined), and the fraction of disconnected communities."""
    community = ensure_labels(g, c)
    sizes = community_sizes(g, community)
    nonempty = sizes[sizes > 0]
    try:
        q = modularity(g, community)
    except ModularityUndefinedError:
        q = None
    flags = disconnected_communities(g, community, worker_count, chunk_size)
    return {
        "num_communities": int(nonempty.shape[0]),
        "min_community_size": int(nonempty.min()) if nonempty.size else 0,
        "max_community_size": int(nonempty.max()) if nonempty.size else 0,
        "mean_community_size": float(nonempty.mean()) if nonempty.size else 0.0,
        "modularity": q,
        "fraction_disconnected": fraction_disconnected(flags, sizes),
    }
