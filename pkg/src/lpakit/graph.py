"""Immutable weighted undirected graphs in compressed adjacency (CSR) form.

A graph is stored as two flat arrays (``targets``, ``weights``) indexed
through a per-vertex ``offsets`` array; every undirected edge appears as two
directed arcs. Construction symmetrizes the input, drops self-loops, merges
duplicate edges by weight summation, and sorts each vertex's neighbor list
ascending, so equal edge lists always produce identical storage.

Vertex ids are dense and 0-based. Loaders are provided for plain edge-list
text files ("u v [w]" per line, '#'/'%' comments, configurable 0/1 indexing)
and Matrix Market coordinate files (pattern/real/integer, general/symmetric).

After construction a :class:`Graph` is immutable (array buffers are marked
read-only) and can be shared across worker threads without synchronization.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "Graph",
    "EdgeListSpec",
    "GraphFormatError",
    "build_graph",
    "load_edgelist",
    "load_mtx",
    "ensure_labels",
]


class GraphFormatError(ValueError):
    """A graph input file could not be parsed."""


@dataclass(frozen=True, eq=False, repr=False)
class Graph:
    """Weighted undirected graph in CSR form.

    Attributes:
        num_vertices: Number of vertices N; ids are 0..N-1.
        offsets: int64 array of length N+1; arcs of vertex i live at
            ``targets[offsets[i]:offsets[i+1]]``.
        targets: int64 array of neighbor ids, length M (each undirected
            edge stored twice, once per direction).
        weights: float64 array of arc weights, length M, strictly positive.
        total_weight_half: m, the sum of all arc weights divided by two
            (equivalently, the total undirected edge weight).
        weighted_degrees: float64 array; entry i is the sum of weights of
            arcs leaving i. Their total equals 2m.
    """

    num_vertices: int
    offsets: np.ndarray
    targets: np.ndarray
    weights: np.ndarray
    total_weight_half: float
    weighted_degrees: np.ndarray

    def __post_init__(self):
        for arr in (self.offsets, self.targets, self.weights, self.weighted_degrees):
            arr.setflags(write=False)

    @property
    def num_arcs(self) -> int:
        return int(self.targets.shape[0])

    def neighbors(self, i: int) -> np.ndarray:
        """Neighbor ids of vertex i, ascending."""
        return self.targets[self.offsets[i] : self.offsets[i + 1]]

    def neighbor_weights(self, i: int) -> np.ndarray:
        """Weights of the arcs leaving vertex i, aligned with neighbors()."""
        return self.weights[self.offsets[i] : self.offsets[i + 1]]

    def arc_sources(self) -> np.ndarray:
        """Source vertex of every stored arc (length num_arcs)."""
        return np.repeat(
            np.arange(self.num_vertices, dtype=np.int64), np.diff(self.offsets)
        )

    def undirected_edges(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """The (u, v, w) arrays of undirected edges with u < v, each once."""
        src = self.arc_sources()
        mask = src < self.targets
        return src[mask], self.targets[mask], self.weights[mask]

    def __repr__(self) -> str:
        return (
            f"Graph(num_vertices={self.num_vertices}, num_arcs={self.num_arcs}, "
            f"m={self.total_weight_half})"
        )


@dataclass(frozen=True)
class EdgeListSpec:
    """How to read an edge-list text file.

    ``indexing`` is the id base used in the file (0 or 1); ids are shifted
    down to 0-based on load. Lines without a weight column take
    ``default_weight``.
    """

    path: str | Path
    indexing: int = 0
    default_weight: float = 1.0

    def __post_init__(self):
        if self.indexing not in (0, 1):
            raise ValueError(f"indexing must be 0 or 1, got {self.indexing}")
        if not self.default_weight > 0:
            raise ValueError(f"default_weight must be positive, got {self.default_weight}")


def _from_pairs(n: int, u: np.ndarray, v: np.ndarray, w: np.ndarray) -> Graph:
    """Assemble a Graph from undirected edge arrays (validates, symmetrizes)."""
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    u = np.ascontiguousarray(u, dtype=np.int64)
    v = np.ascontiguousarray(v, dtype=np.int64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    if not (u.shape == v.shape == w.shape):
        raise ValueError("edge arrays must have equal length")

    bad = (u < 0) | (u >= n) | (v < 0) | (v >= n)
    if bad.any():
        k = int(np.argmax(bad))
        raise ValueError(
            f"edge {k} ({u[k]}, {v[k]}, {w[k]}): vertex id out of range for n={n}"
        )
    nonpositive = ~(w > 0)  # also catches NaN
    if nonpositive.any():
        k = int(np.argmax(nonpositive))
        raise ValueError(f"edge {k} ({u[k]}, {v[k]}, {w[k]}): weight must be positive")

    keep = u != v  # self-loops dropped
    lo = np.minimum(u[keep], v[keep])
    hi = np.maximum(u[keep], v[keep])
    wk = w[keep]

    if lo.size:
        # Merge duplicate undirected edges by weight sum. The packed key
        # lo*n + hi requires n*n to fit in int64 (n below ~3e9).
        key = lo * np.int64(n) + hi
        uniq, inverse = np.unique(key, return_inverse=True)
        merged_w = np.bincount(inverse, weights=wk)
        eu = uniq // n
        ev = uniq % n
    else:
        eu = np.empty(0, dtype=np.int64)
        ev = np.empty(0, dtype=np.int64)
        merged_w = np.empty(0, dtype=np.float64)

    src = np.concatenate((eu, ev))
    dst = np.concatenate((ev, eu))
    ww = np.concatenate((merged_w, merged_w))
    order = np.lexsort((dst, src))  # per-vertex ascending neighbor order
    src = src[order]
    dst = np.ascontiguousarray(dst[order])
    ww = np.ascontiguousarray(ww[order])

    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
    degrees = np.bincount(src, weights=ww, minlength=n).astype(np.float64)
    m = float(ww.sum() / 2.0)

    return Graph(
        num_vertices=n,
        offsets=offsets,
        targets=dst,
        weights=ww,
        total_weight_half=m,
        weighted_degrees=degrees,
    )


def build_graph(n: int, edges) -> Graph:
    """Build a Graph from ``(u, v, w)`` triples over n vertices.

    Self-loops are dropped; duplicate (u, v) pairs are merged by summing
    their weights. Raises ValueError naming the offending edge when a
    vertex id is out of range or a weight is not strictly positive.
    """
    arr = np.asarray(edges, dtype=np.float64)
    if arr.size == 0:
        empty = np.empty(0, dtype=np.int64)
        return _from_pairs(n, empty, empty, np.empty(0, dtype=np.float64))
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError("edges must be (u, v, w) triples")
    u = arr[:, 0].astype(np.int64)
    v = arr[:, 1].astype(np.int64)
    if not (np.array_equal(arr[:, 0], u) and np.array_equal(arr[:, 1], v)):
        raise ValueError("vertex ids must be integers")
    return _from_pairs(n, u, v, arr[:, 2])


def load_edgelist(spec: EdgeListSpec | str | Path) -> Graph:
    """Load a Graph from an edge-list text file.

    Lines are "u v" or "u v w" (whitespace-separated); blank lines and lines
    starting with '#' or '%' are ignored. The vertex count is one past the
    largest id seen after index normalization; an empty file yields the
    empty graph.
    """
    if isinstance(spec, (str, Path)):
        spec = EdgeListSpec(spec)
    path = Path(spec.path)
    base = spec.indexing

    us: list[int] = []
    vs: list[int] = []
    ws: list[float] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line[0] in "#%":
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise GraphFormatError(
                    f"{path}:{lineno}: expected 'u v [w]', got {line!r}"
                )
            try:
                u = int(parts[0])
                v = int(parts[1])
            except ValueError:
                raise GraphFormatError(
                    f"{path}:{lineno}: vertex ids must be integers, got {line!r}"
                ) from None
            if len(parts) == 3:
                try:
                    w = float(parts[2])
                except ValueError:
                    raise GraphFormatError(
                        f"{path}:{lineno}: bad weight token {parts[2]!r}"
                    ) from None
                if not w > 0:
                    raise GraphFormatError(
                        f"{path}:{lineno}: edge weight must be positive, got {parts[2]}"
                    )
            else:
                w = spec.default_weight
            u -= base
            v -= base
            if u < 0 or v < 0:
                raise GraphFormatError(
                    f"{path}:{lineno}: vertex id below indexing base {base}"
                )
            us.append(u)
            vs.append(v)
            ws.append(w)

    if not us:
        empty = np.empty(0, dtype=np.int64)
        return _from_pairs(0, empty, empty, np.empty(0, dtype=np.float64))
    n = 1 + max(max(us), max(vs))
    return _from_pairs(
        n,
        np.asarray(us, dtype=np.int64),
        np.asarray(vs, dtype=np.int64),
        np.asarray(ws, dtype=np.float64),
    )


_MTX_FIELDS = ("pattern", "real", "integer")
_MTX_SYMMETRIES = ("general", "symmetric")


def load_mtx(path: str | Path) -> Graph:
    """Load a Graph from a Matrix Market coordinate file.

    ``symmetric`` files contribute one undirected edge per entry. ``general``
    files are symmetrized: every off-diagonal entry becomes an undirected
    edge, and when both (r, c) and (c, r) are listed the pair gets the larger
    of the two directed weights, so files that already carry reverse entries
    load the same as files that do not. Diagonal entries are dropped;
    repeated identical coordinates are merged by weight sum. ``pattern``
    entries get weight 1.
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline()
        if not header:
            raise GraphFormatError(f"{path}:1: empty file (missing MatrixMarket header)")
        tokens = header.strip().split()
        if len(tokens) != 5 or tokens[0].lower() != "%%matrixmarket":
            raise GraphFormatError(
                f"{path}:1: malformed MatrixMarket header: {header.strip()!r}"
            )
        obj, fmt, field, symmetry = (t.lower() for t in tokens[1:])
        if obj != "matrix" or fmt != "coordinate":
            raise GraphFormatError(
                f"{path}:1: only 'matrix coordinate' files are supported"
            )
        if field not in _MTX_FIELDS:
            raise GraphFormatError(f"{path}:1: unsupported field {field!r}")
        if symmetry not in _MTX_SYMMETRIES:
            raise GraphFormatError(f"{path}:1: unsupported symmetry {symmetry!r}")

        rows = cols = nnz = -1
        lineno = 1
        for raw in fh:
            lineno += 1
            line = raw.strip()
            if not line or line.startswith("%"):
                continue
            parts = line.split()
            try:
                if len(parts) != 3:
                    raise ValueError
                rows, cols, nnz = (int(p) for p in parts)
            except ValueError:
                raise GraphFormatError(
                    f"{path}:{lineno}: expected 'rows cols nnz' size line, got {line!r}"
                ) from None
            break
        if rows < 0:
            raise GraphFormatError(f"{path}: missing size line")
        if nnz < 0:
            raise GraphFormatError(f"{path}:{lineno}: negative entry count")

        n = max(rows, cols)
        has_value = field != "pattern"
        r_idx = np.empty(nnz, dtype=np.int64)
        c_idx = np.empty(nnz, dtype=np.int64)
        vals = np.empty(nnz, dtype=np.float64)
        count = 0
        for raw in fh:
            lineno += 1
            line = raw.strip()
            if not line or line.startswith("%"):
                continue
            if count >= nnz:
                raise GraphFormatError(
                    f"{path}:{lineno}: more entries than the declared {nnz}"
                )
            parts = line.split()
            expected = 3 if has_value else 2
            if len(parts) != expected:
                raise GraphFormatError(
                    f"{path}:{lineno}: expected {expected} tokens, got {line!r}"
                )
            try:
                r = int(parts[0])
                c = int(parts[1])
                w = float(parts[2]) if has_value else 1.0
            except ValueError:
                raise GraphFormatError(f"{path}:{lineno}: bad entry {line!r}") from None
            if not (1 <= r <= rows) or not (1 <= c <= cols):
                raise GraphFormatError(
                    f"{path}:{lineno}: index ({r}, {c}) outside declared {rows}x{cols}"
                )
            if has_value and not w > 0:
                raise GraphFormatError(
                    f"{path}:{lineno}: edge weight must be positive, got {parts[2]}"
                )
            r_idx[count] = r - 1
            c_idx[count] = c - 1
            vals[count] = w
            count += 1
        if count != nnz:
            raise GraphFormatError(
                f"{path}: entry count mismatch: header declares {nnz}, found {count}"
            )

    keep = r_idx != c_idx  # diagonal dropped
    r0 = r_idx[keep]
    c0 = c_idx[keep]
    w0 = vals[keep]

    if symmetry == "symmetric":
        return _from_pairs(n, r0, c0, w0)

    # general: merge repeated coordinates by sum, then combine the two
    # directions of each pair by max so listed reverse entries do not double
    # the edge weight.
    if r0.size == 0:
        empty = np.empty(0, dtype=np.int64)
        return _from_pairs(n, empty, empty, np.empty(0, dtype=np.float64))
    ordered_key = r0 * np.int64(n) + c0
    ouniq, oinv = np.unique(ordered_key, return_inverse=True)
    osum = np.bincount(oinv, weights=w0)
    ru = ouniq // n
    cu = ouniq % n
    pair_key = np.minimum(ru, cu) * np.int64(n) + np.maximum(ru, cu)
    puniq, pinv = np.unique(pair_key, return_inverse=True)
    pmax = np.zeros(puniq.shape[0], dtype=np.float64)
    np.maximum.at(pmax, pinv, osum)
    return _from_pairs(n, puniq // n, puniq % n, pmax)


def ensure_labels(g: Graph, labels) -> np.ndarray:
    """Validate a community-label array for g and return it as int64.

    Labels must be one integer per vertex, each a valid vertex id. The
    returned array aliases the input when it already has the right layout.
    """
    arr = np.asarray(labels)
    if arr.dtype.kind not in "iu":
        raise ValueError(f"labels must be integers, got dtype {arr.dtype}")
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    n = g.num_vertices
    if arr.ndim != 1 or arr.shape[0] != n:
        raise ValueError(f"labels must have one entry per vertex ({n}), got shape {arr.shape}")
    if n and (arr.min() < 0 or arr.max() >= n):
        raise ValueError("labels must be vertex ids in [0, N)")
    return arr
