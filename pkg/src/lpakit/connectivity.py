"""Audit community labelings for internal disconnection.

The detector runs a community-restricted BFS from the first scanned vertex
of each community and flags the community when the traversal reaches fewer
vertices than the community holds. Communities are dealt to workers through
the same static work-list as the BFS splitter, and each worker zeroes sizes
on a private copy, so the shared visited/flag arrays keep a single writer
per cell. Results are identical for every worker count.

``oracle_components`` is the independent union-find reference used by the
test suite to arbitrate the BFS-based code paths; it deliberately shares no
traversal code with them.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .graph import Graph, ensure_labels
from .parallel import run_workers

__all__ = [
    "community_sizes",
    "disconnected_communities",
    "fraction_disconnected",
    "DisjointSet",
    "oracle_components",
]


def community_sizes(g: Graph, c) -> np.ndarray:
    """Vertex count per community label (int64 array of length N)."""
    community = ensure_labels(g, c)
    return np.bincount(community, minlength=g.num_vertices).astype(np.int64)


@njit(cache=True, nogil=True)
def _detect_scan(
    offsets, targets, community, sizes, visited, flags, queue,
    worker_id, worker_count, chunk_size,
):
    n = community.shape[0]
    for i in range(n):
        c = community[i]
        if sizes[c] == 0 or (c // chunk_size) % worker_count != worker_id:
            continue
        visited[i] = True
        queue[0] = i
        head, tail = 0, 1
        reached = 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(offsets[u], offsets[u + 1]):
                j = targets[k]
                if not visited[j] and community[j] == c:
                    visited[j] = True
                    reached += 1
                    queue[tail] = j
                    tail += 1
        if reached < sizes[c]:
            flags[c] = 1
        sizes[c] = 0  # community handled; sizes is this worker's private copy


def disconnected_communities(
    g: Graph, c, worker_count: int = 1, chunk_size: int = 1024
) -> np.ndarray:
    """Flag every community whose members are not mutually reachable inside
    it. Returns a uint8 array indexed by community label (1 = disconnected).
    """
    community = ensure_labels(g, c)
    if worker_count < 1:
        raise ValueError(f"worker_count must be positive, got {worker_count}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be positive, got {chunk_size}")
    n = g.num_vertices
    sizes = np.bincount(community, minlength=n).astype(np.int64)
    flags = np.zeros(n, dtype=np.uint8)
    visited = np.zeros(n, dtype=np.bool_)

    if worker_count == 1:
        queue = np.empty(n, dtype=np.int64)
        _detect_scan(
            g.offsets, g.targets, community, sizes, visited, flags, queue, 0, 1, chunk_size
        )
    else:

        def scan(worker_id: int) -> None:
            queue = np.empty(n, dtype=np.int64)
            _detect_scan(
                g.offsets, g.targets, community, sizes.copy(), visited, flags, queue,
                worker_id, worker_count, chunk_size,
            )

        run_workers(worker_count, scan)
    return flags


def fraction_disconnected(flags, sizes) -> float:
    """Share of non-empty communities flagged disconnected (0.0 when there
    are no communities)."""
    flags = np.asarray(flags)
    sizes = np.asarray(sizes)
    if flags.shape != sizes.shape:
        raise ValueError("flags and sizes must have the same length")
    total = int(np.count_nonzero(sizes))
    if total == 0:
        return 0.0
    return float(np.count_nonzero(flags)) / total


class DisjointSet:
    """Array union-find with union by size and path halving."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return ra


def oracle_components(g: Graph, c) -> np.ndarray:
    """Union-find reference labeling: each vertex gets the minimum vertex id
    of its connected component within its community.

    Kept independent of the BFS kernels on purpose; tests compare the two.
    """
    community = ensure_labels(g, c)
    n = g.num_vertices
    dsu = DisjointSet(n)
    src = g.arc_sources()
    dst = g.targets
    mask = (src < dst) & (community[src] == community[dst])
    for u, v in zip(src[mask].tolist(), dst[mask].tolist()):
        dsu.union(u, v)

    out = np.empty(n, dtype=np.int64)
    root_min: dict[int, int] = {}
    for i in range(n):
        r = dsu.find(i)
        if r not in root_min:
            root_min[r] = i  # ascending scan: first sighting is the minimum
        out[i] = root_min[r]
    return out
