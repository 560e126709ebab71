"""Splitters that cut every internally-disconnected community into its
connected components.

Both strategies relabel each component of each input community with the
smallest vertex id inside it, so their outputs are identical and refine the
input partition:

* min-label propagation (``split_lp``): every vertex repeatedly takes the
  minimum label among itself and same-community neighbors until a sweep
  changes nothing. With ``prune`` set, vertices go dormant once visited and
  wake only when a same-community neighbor's label drops.
* community-restricted BFS (``split_bfs``): vertices are scanned in
  ascending order; the first unvisited vertex of a component (necessarily
  its minimum id) seeds a BFS that labels the whole component. A static
  work-list assigns each community label to exactly one worker, so the
  shared visited/output arrays have a single writer per cell and workers
  need no locks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .graph import Graph, ensure_labels
from .parallel import ChunkCursor, run_workers, vertex_chunk

__all__ = ["SplitResult", "split_lp", "split_bfs"]


@dataclass
class SplitResult:
    """Refined labels; iteration/change counts are filled by split_lp only."""

    labels: np.ndarray
    iterations: int | None = None
    changed_total: int | None = None


@njit(cache=True, nogil=True)
def _min_label_range(offsets, targets, community, out_labels, processed, prune, lo, hi):
    changed = 0
    for i in range(lo, hi):
        if prune:
            if processed[i]:
                continue
            processed[i] = True
        c = community[i]
        cmin = out_labels[i]
        for k in range(offsets[i], offsets[i + 1]):
            j = targets[k]
            if community[j] == c and out_labels[j] < cmin:
                cmin = out_labels[j]
        if cmin == out_labels[i]:
            continue
        out_labels[i] = cmin
        changed += 1
        if prune:
            for k in range(offsets[i], offsets[i + 1]):
                j = targets[k]
                if community[j] == c:
                    processed[j] = False
    return changed


@njit(cache=True, nogil=True)
def _bfs_split_scan(
    offsets, targets, community, out_labels, visited, queue,
    worker_id, worker_count, chunk_size,
):
    n = community.shape[0]
    for i in range(n):
        c = community[i]
        if (c // chunk_size) % worker_count != worker_id:
            continue
        if visited[i]:
            continue
        visited[i] = True
        out_labels[i] = i
        queue[0] = i
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(offsets[u], offsets[u + 1]):
                j = targets[k]
                if not visited[j] and community[j] == c:
                    visited[j] = True
                    out_labels[j] = i
                    queue[tail] = j
                    tail += 1


def split_lp(g: Graph, c, prune: bool = False, *, workers: int = 1) -> SplitResult:
    """Split communities by parallel min-label propagation.

    Without ``prune`` every vertex is rescanned each sweep; with it, only
    reactivated vertices are. Sweeps repeat until one changes no labels.
    The returned labels map every vertex to the minimum vertex id in its
    connected component within its input community.
    """
    community = ensure_labels(g, c)
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    n = g.num_vertices
    out = np.arange(n, dtype=np.int64)
    processed = np.zeros(n, dtype=np.bool_)
    chunk = vertex_chunk(n, workers)

    iterations = 0
    changed_total = 0
    while True:
        iterations += 1
        if workers == 1:
            delta_n = int(
                _min_label_range(
                    g.offsets, g.targets, community, out, processed, prune, 0, n
                )
            )
        else:
            cursor = ChunkCursor(n, chunk)
            counts = [0] * workers

            def sweep(worker_id: int) -> None:
                got = 0
                while True:
                    span = cursor.claim()
                    if span is None:
                        break
                    got += _min_label_range(
                        g.offsets, g.targets, community, out, processed,
                        prune, span[0], span[1],
                    )
                counts[worker_id] = got

            run_workers(workers, sweep)
            delta_n = int(sum(counts))
        changed_total += delta_n
        if delta_n == 0:
            break
    return SplitResult(labels=out, iterations=iterations, changed_total=changed_total)


def split_bfs(g: Graph, c, worker_count: int = 1, chunk_size: int = 1024) -> SplitResult:
    """Split communities by community-restricted BFS over a static work-list.

    Communities are dealt to workers in ``chunk_size`` blocks round-robin;
    each worker scans all vertices but traverses only communities it owns.
    Output is identical for every worker count.
    """
    community = ensure_labels(g, c)
    if worker_count < 1:
        raise ValueError(f"worker_count must be positive, got {worker_count}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be positive, got {chunk_size}")
    n = g.num_vertices
    out = np.arange(n, dtype=np.int64)
    visited = np.zeros(n, dtype=np.bool_)

    if worker_count == 1:
        queue = np.empty(n, dtype=np.int64)
        _bfs_split_scan(
            g.offsets, g.targets, community, out, visited, queue, 0, 1, chunk_size
        )
    else:

        def scan(worker_id: int) -> None:
            queue = np.empty(n, dtype=np.int64)
            _bfs_split_scan(
                g.offsets, g.targets, community, out, visited, queue,
                worker_id, worker_count, chunk_size,
            )

        run_workers(worker_count, scan)
    return SplitResult(labels=out)
