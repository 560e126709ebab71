"""Deterministic benchmark-graph generators.

Two models: planted partitions (near-equal blocks, independent intra- and
inter-block edge probabilities) and clique rings (cliques joined in a ring
by single bridge edges). Edges come back as sorted unit-weight (u, v)
pairs, so a fixed seed always produces byte-identical edge-list files.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .graph import Graph, build_graph

# Candidate-pair sets up to this size are sampled by masking every pair;
# larger ones draw a binomial count of distinct pairs instead.
_DENSE_PAIR_LIMIT = 1 << 18

_EMPTY_PAIRS = np.empty((0, 2), dtype=np.int64)


def _block_bounds(n: int, communities: int) -> np.ndarray:
    """Boundaries of near-equal blocks: sizes differ by at most one."""
    sizes = np.full(communities, n // communities, dtype=np.int64)
    sizes[: n % communities] += 1
    bounds = np.zeros(communities + 1, dtype=np.int64)
    np.cumsum(sizes, out=bounds[1:])
    return bounds


def _first_seen_unique(keys: np.ndarray) -> np.ndarray:
    _, first = np.unique(keys, return_index=True)
    return keys[np.sort(first)]


def _sample_distinct(rng: np.random.Generator, draw_key, want: int) -> np.ndarray:
    """Accumulate ``want`` distinct keys from repeated batched draws."""
    chosen = np.empty(0, dtype=np.int64)
    while chosen.shape[0] < want:
        need = want - chosen.shape[0]
        batch = draw_key(rng, max(16, int(need * 1.2)))
        chosen = _first_seen_unique(np.concatenate((chosen, batch)))
    return chosen[:want]


def _intra_pairs(rng: np.random.Generator, lo: int, hi: int, p: float) -> np.ndarray:
    s = hi - lo
    ncand = s * (s - 1) // 2
    if ncand == 0 or p <= 0.0:
        return _EMPTY_PAIRS
    if p >= 1.0 or ncand <= _DENSE_PAIR_LIMIT or p > 0.5:
        iu, jv = np.triu_indices(s, k=1)
        if p < 1.0:
            mask = rng.random(ncand) < p
            iu, jv = iu[mask], jv[mask]
        return np.column_stack((iu.astype(np.int64) + lo, jv.astype(np.int64) + lo))

    want = int(rng.binomial(ncand, p))
    if want == 0:
        return _EMPTY_PAIRS

    def draw_key(r: np.random.Generator, count: int) -> np.ndarray:
        a = r.integers(0, s, size=count)
        b = r.integers(0, s, size=count)
        keep = a != b
        a, b = a[keep], b[keep]
        return np.minimum(a, b) * s + np.maximum(a, b)

    keys = _sample_distinct(rng, draw_key, want)
    return np.column_stack((keys // s + lo, keys % s + lo))


def _inter_pairs(
    rng: np.random.Generator, alo: int, ahi: int, blo: int, bhi: int, p: float
) -> np.ndarray:
    sa = ahi - alo
    sb = bhi - blo
    ncand = sa * sb
    if ncand == 0 or p <= 0.0:
        return _EMPTY_PAIRS
    if p >= 1.0 or ncand <= _DENSE_PAIR_LIMIT or p > 0.5:
        if p >= 1.0:
            ids = np.arange(ncand, dtype=np.int64)
        else:
            ids = np.nonzero(rng.random(ncand) < p)[0].astype(np.int64)
        return np.column_stack((ids // sb + alo, ids % sb + blo))

    want = int(rng.binomial(ncand, p))
    if want == 0:
        return _EMPTY_PAIRS

    def draw_key(r: np.random.Generator, count: int) -> np.ndarray:
        return r.integers(0, ncand, size=count, dtype=np.int64)

    ids = _sample_distinct(rng, draw_key, want)
    return np.column_stack((ids // sb + alo, ids % sb + blo))


def _validate_counts(n: int, communities: int) -> None:
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    if communities < 1 or communities > max(n, 1):
        raise ValueError(
            f"communities must be in [1, max(n, 1)], got {communities} for n={n}"
        )


def planted_partition_edges(
    n: int, communities: int, p_in: float, p_out: float, seed: int = 0
) -> np.ndarray:
    """Sample a planted-partition edge list; deterministic for a fixed seed.

    Vertices split into near-equal blocks; each intra-block pair appears
    with probability p_in and each inter-block pair with p_out. Returns
    sorted (u, v) rows with u < v.
    """
    _validate_counts(n, communities)
    for name, p in (("p_in", p_in), ("p_out", p_out)):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    bounds = _block_bounds(n, communities)
    chunks = []
    for a in range(communities):
        chunks.append(_intra_pairs(rng, int(bounds[a]), int(bounds[a + 1]), p_in))
    for a in range(communities):
        for b in range(a + 1, communities):
            chunks.append(
                _inter_pairs(
                    rng,
                    int(bounds[a]), int(bounds[a + 1]),
                    int(bounds[b]), int(bounds[b + 1]),
                    p_out,
                )
            )
    edges = np.concatenate(chunks) if chunks else _EMPTY_PAIRS
    if edges.shape[0]:
        order = np.lexsort((edges[:, 1], edges[:, 0]))
        edges = edges[order]
    return edges


def cliques_bridges_edges(n: int, communities: int) -> np.ndarray:
    """Clique-ring edge list: near-equal cliques, consecutive cliques joined
    by one bridge (last vertex of one to first vertex of the next, wrapping
    around). Returns sorted unique (u, v) rows with u < v."""
    _validate_counts(n, communities)
    bounds = _block_bounds(n, communities)
    chunks = []
    for a in range(communities):
        lo, hi = int(bounds[a]), int(bounds[a + 1])
        s = hi - lo
        if s >= 2:
            iu, jv = np.triu_indices(s, k=1)
            chunks.append(
                np.column_stack((iu.astype(np.int64) + lo, jv.astype(np.int64) + lo))
            )
    if communities >= 2:
        for a in range(communities):
            u = int(bounds[a + 1]) - 1  # last vertex of clique a
            v = int(bounds[(a + 1) % communities])  # first vertex of the next
            if u != v:
                chunks.append(np.array([[min(u, v), max(u, v)]], dtype=np.int64))
    edges = np.concatenate(chunks) if chunks else _EMPTY_PAIRS
    if edges.shape[0]:
        edges = np.unique(edges, axis=0)
    return edges


def edges_to_graph(n: int, edges: np.ndarray) -> Graph:
    """Build a unit-weight Graph from (u, v) pair rows."""
    if edges.shape[0] == 0:
        return build_graph(n, [])
    triples = np.column_stack((edges, np.ones(edges.shape[0], dtype=np.float64)))
    return build_graph(n, triples)


def write_edgelist(path: str | Path, edges: np.ndarray, header: str | None = None) -> None:
    """Write (u, v) pairs as a 0-indexed edge-list file, one "u v" per line.

    Deterministic: no timestamps, rows exactly as given.
    """
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for u, v in edges.tolist():
            fh.write(f"{u} {v}\n")
