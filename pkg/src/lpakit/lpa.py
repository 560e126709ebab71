"""Asynchronous parallel label propagation with vertex pruning.

Every vertex starts in its own community and repeatedly adopts the label
carrying the most edge weight among its neighbors. A vertex is marked
processed once visited and is reactivated only when a neighbor changes
label, so converged regions stop costing work. An iteration ends when all
workers pass the barrier; the run converges once the fraction of vertices
that changed label drops to the tolerance, after which the configured
splitter repairs any internally-disconnected communities.

Workers claim vertex ranges from a shared cursor (dynamic load balancing)
and update the shared label array in place: reads may observe a mix of
current- and previous-iteration labels, which asynchronous label
propagation tolerates by design. Single-worker runs process vertices in
ascending order and are fully deterministic; multi-worker runs are not,
but satisfy the same convergence and connectivity guarantees.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .graph import Graph, ensure_labels
from .parallel import ChunkCursor, run_workers, vertex_chunk

__all__ = [
    "SPLIT_STRATEGIES",
    "LpaParams",
    "LabelAccumulator",
    "RunReport",
    "lpa",
    "lpa_move",
    "scan_communities",
    "best_label",
]

SPLIT_STRATEGIES = ("none", "lp", "lpp", "bfs")

DEFAULT_TOLERANCE = 0.05
DEFAULT_MAX_ITERATIONS = 20
DEFAULT_CHUNK_SIZE = 1024


def _default_workers() -> int:
    return os.cpu_count() or 1


@dataclass
class LpaParams:
    """Knobs for a detection run.

    tolerance: convergence threshold on the fraction of vertices changing
        label per iteration (0 <= tolerance < 1).
    max_iterations: hard cap on propagation sweeps.
    split_strategy: post-processing splitter ("none", "lp", "lpp", "bfs").
    worker_count: number of worker threads.
    chunk_size: community chunk size for the splitter/detector work-lists.
    """

    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    split_strategy: str = "bfs"
    worker_count: int = field(default_factory=_default_workers)
    chunk_size: int = DEFAULT_CHUNK_SIZE

    def __post_init__(self):
        if not 0.0 <= self.tolerance < 1.0:
            raise ValueError(f"tolerance must be in [0, 1), got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be positive, got {self.max_iterations}")
        if self.split_strategy not in SPLIT_STRATEGIES:
            raise ValueError(
                f"split_strategy must be one of {SPLIT_STRATEGIES}, got {self.split_strategy!r}"
            )
        if self.worker_count < 1:
            raise ValueError(f"worker_count must be positive, got {self.worker_count}")
        if self.chunk_size < 1:
            raise ValueError(f"chunk_size must be positive, got {self.chunk_size}")


@dataclass
class RunReport:
    """Outcome of a detection run.

    iterations equals the number of propagation sweeps performed (the
    length of delta_n_history). phase_times carries wall-clock seconds for
    the "propagation" and "splitting" phases.
    """

    iterations: int
    delta_n_history: list[int]
    phase_times: dict[str, float]
    final_labels: np.ndarray


class LabelAccumulator:
    """Per-worker map from community label to accumulated edge weight.

    Backed by a dense weight array indexed by label plus the list of touched
    labels, so inserts never collide and clearing costs O(touched). Each
    worker owns exactly one instance; instances are never shared.
    """

    def __init__(self, capacity: int):
        self._weight = np.zeros(capacity, dtype=np.float64)
        self._touched = np.empty(capacity, dtype=np.int64)
        self._count = 0

    def __len__(self) -> int:
        return self._count

    def __contains__(self, label: int) -> bool:
        return 0 <= label < self._weight.shape[0] and self._weight[label] != 0.0

    def get(self, label: int, default: float = 0.0) -> float:
        w = self._weight[label]
        return float(w) if w != 0.0 else default

    def items(self):
        for t in range(self._count):
            c = int(self._touched[t])
            yield c, float(self._weight[c])

    def as_dict(self) -> dict[int, float]:
        return dict(self.items())

    def clear(self) -> None:
        self._weight[self._touched[: self._count]] = 0.0
        self._count = 0


@njit(cache=True, nogil=True)
def _scan_neighbor_weights(offsets, targets, weights, labels, i, acc_weight, acc_touched):
    # acc_weight entries are zero for untouched labels; weights are strictly
    # positive, so a zero entry means "not seen yet".
    count = 0
    for k in range(offsets[i], offsets[i + 1]):
        j = targets[k]
        if j == i:
            continue
        c = labels[j]
        if acc_weight[c] == 0.0:
            acc_touched[count] = c
            count += 1
        acc_weight[c] += weights[k]
    return count


@njit(cache=True, nogil=True)
def _best_touched_label(acc_weight, acc_touched, count, current):
    if count == 0:
        return current
    best_w = 0.0
    for t in range(count):
        w = acc_weight[acc_touched[t]]
        if w > best_w:
            best_w = w
    # keep the current label when it ties for the maximum, else take the
    # numerically smallest tied label
    best = np.int64(-1)
    for t in range(count):
        c = acc_touched[t]
        if acc_weight[c] == best_w:
            if c == current:
                return current
            if best < 0 or c < best:
                best = c
    return best


@njit(cache=True, nogil=True)
def _reset_accumulator(acc_weight, acc_touched, count):
    for t in range(count):
        acc_weight[acc_touched[t]] = 0.0


@njit(cache=True, nogil=True)
def _move_range(offsets, targets, weights, labels, processed, acc_weight, acc_touched, lo, hi):
    moved = 0
    for i in range(lo, hi):
        if processed[i]:
            continue
        processed[i] = True
        count = _scan_neighbor_weights(
            offsets, targets, weights, labels, i, acc_weight, acc_touched
        )
        best = _best_touched_label(acc_weight, acc_touched, count, labels[i])
        _reset_accumulator(acc_weight, acc_touched, count)
        if best != labels[i]:
            labels[i] = best
            moved += 1
            for k in range(offsets[i], offsets[i + 1]):
                processed[targets[k]] = False
    return moved


def scan_communities(acc: LabelAccumulator, g: Graph, labels, i: int) -> LabelAccumulator:
    """Accumulate, per adjacent community, the weight of arcs from vertex i.

    The accumulator must be empty (clear() between vertices). Self-arcs are
    skipped. Returns the same accumulator, filled.
    """
    if len(acc):
        raise ValueError("accumulator must be empty; call clear() between vertices")
    if not 0 <= i < g.num_vertices:
        raise ValueError(f"vertex id {i} out of range")
    lab = ensure_labels(g, labels)
    acc._count = int(
        _scan_neighbor_weights(
            g.offsets, g.targets, g.weights, lab, i, acc._weight, acc._touched
        )
    )
    return acc


def best_label(acc: LabelAccumulator, current: int) -> int:
    """Label with maximum accumulated weight; the current label wins ties it
    participates in, otherwise the smallest tied label. Empty accumulator
    returns ``current``."""
    return int(_best_touched_label(acc._weight, acc._touched, acc._count, current))


def _check_shared_arrays(g: Graph, labels: np.ndarray, processed: np.ndarray) -> None:
    n = g.num_vertices
    if not (isinstance(labels, np.ndarray) and labels.dtype == np.int64 and labels.shape == (n,)):
        raise ValueError("labels must be an int64 array of length num_vertices")
    if n and (labels.min() < 0 or labels.max() >= n):
        raise ValueError("labels must be vertex ids in [0, N)")
    if not (
        isinstance(processed, np.ndarray)
        and processed.dtype == np.bool_
        and processed.shape == (n,)
    ):
        raise ValueError("processed_flags must be a bool array of length num_vertices")


def lpa_move(
    g: Graph,
    labels: np.ndarray,
    processed_flags: np.ndarray,
    accumulators: list[LabelAccumulator],
    *,
    chunk: int | None = None,
) -> int:
    """One propagation sweep over the unprocessed vertices.

    Each visited vertex is marked processed, rescored via scan_communities
    and best_label, and on a label change its neighbors are marked
    unprocessed again. Workers claim vertex ranges dynamically; per-worker
    change counts are summed after the barrier. Returns the number of
    vertices whose label changed.
    """
    workers = len(accumulators)
    if workers < 1:
        raise ValueError("need at least one accumulator")
    _check_shared_arrays(g, labels, processed_flags)
    n = g.num_vertices
    if chunk is None:
        chunk = vertex_chunk(n, workers)

    if workers == 1:
        acc = accumulators[0]
        return int(
            _move_range(
                g.offsets, g.targets, g.weights, labels, processed_flags,
                acc._weight, acc._touched, 0, n,
            )
        )

    cursor = ChunkCursor(n, chunk)
    moved = [0] * workers

    def sweep(worker_id: int) -> None:
        acc = accumulators[worker_id]
        got = 0
        while True:
            span = cursor.claim()
            if span is None:
                break
            got += _move_range(
                g.offsets, g.targets, g.weights, labels, processed_flags,
                acc._weight, acc._touched, span[0], span[1],
            )
        moved[worker_id] = got

    run_workers(workers, sweep)
    return int(sum(moved))


def lpa(g: Graph, params: LpaParams | None = None) -> RunReport:
    """Detect communities, then split any internally-disconnected ones.

    Labels start as vertex ids; propagation sweeps run until the changed
    fraction drops to the tolerance or max_iterations is reached, and the
    configured splitter then refines the labeling ("none" skips that phase).
    The report carries wall times for both phases.
    """
    from .split import split_bfs, split_lp  # local import to avoid a cycle

    if params is None:
        params = LpaParams()
    n = g.num_vertices
    labels = np.arange(n, dtype=np.int64)
    processed = np.zeros(n, dtype=np.bool_)
    accumulators = [LabelAccumulator(n) for _ in range(params.worker_count)]

    history: list[int] = []
    t0 = time.perf_counter()
    for _ in range(params.max_iterations):
        delta_n = lpa_move(g, labels, processed, accumulators)
        history.append(delta_n)
        if delta_n <= params.tolerance * n:
            break
    t1 = time.perf_counter()

    if params.split_strategy == "lp":
        labels = split_lp(g, labels, prune=False, workers=params.worker_count).labels
    elif params.split_strategy == "lpp":
        labels = split_lp(g, labels, prune=True, workers=params.worker_count).labels
    elif params.split_strategy == "bfs":
        labels = split_bfs(g, labels, params.worker_count, params.chunk_size).labels
    t2 = time.perf_counter()

    return RunReport(
        iterations=len(history),
        delta_n_history=history,
        phase_times={"propagation": t1 - t0, "splitting": t2 - t1},
        final_labels=labels,
    )
