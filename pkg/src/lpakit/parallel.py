"""Thread plumbing shared by the propagation and splitting kernels.

The compute kernels release the GIL, so ordinary threads run them
concurrently; the Python side only hands out work and joins. Shared arrays
are accessed at cell granularity (aligned loads and stores, never torn),
and stale reads of neighbor labels are tolerated by the algorithms.
"""

from __future__ import annotations

import threading


def worklist_owner(label: int, worker_count: int, chunk_size: int) -> int:
    """Worker owning a community label: chunks of ``chunk_size`` consecutive
    labels are dealt round-robin across workers."""
    return (label // chunk_size) % worker_count


def vertex_chunk(n: int, workers: int) -> int:
    """Default claim size giving every worker several chunks to balance."""
    return max(256, -(-n // (workers * 8)))


class ChunkCursor:
    """Hands out consecutive ``[lo, hi)`` ranges of ``[0, total)``.

    Claiming is serialized by a lock; chunk execution is not.
    """

    def __init__(self, total: int, chunk: int):
        self._total = total
        self._chunk = max(1, chunk)
        self._next = 0
        self._lock = threading.Lock()

    def claim(self) -> tuple[int, int] | None:
        with self._lock:
            lo = self._next
            if lo >= self._total:
                return None
            hi = min(self._total, lo + self._chunk)
            self._next = hi
            return lo, hi


def run_workers(worker_count: int, target) -> None:
    """Run ``target(worker_id)`` on worker_count threads and join them all.

    A single worker runs inline on the calling thread. Exceptions raised by
    workers are re-raised here after the join.
    """
    if worker_count == 1:
        target(0)
        return
    errors: list[BaseException | None] = [None] * worker_count

    def shell(worker_id: int) -> None:
        try:
            target(worker_id)
        except BaseException as exc:  # noqa: BLE001 - reported to the caller
            errors[worker_id] = exc

    threads = [
        threading.Thread(target=shell, args=(w,), name=f"lpakit-worker-{w}")
        for w in range(worker_count)
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for exc in errors:
        if exc is not None:
            raise exc
