"""Immutable undirected simple graphs with file IO.

Vertices are dense 0-based integers. Adjacency is kept sorted, the structure
is validated on construction, and instances are safe to share between
threads. Files may be 1-based (DIMACS) and are shifted on read.

Two representations coexist: Python adjacency lists (convenient) and a CSR
array pair (what the algorithm kernels consume). Either may be built first;
the other is derived lazily and cached.
"""

from __future__ import annotations

import io
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateEdgeError,
    GraphFormatError,
    GraphInputError,
    SelfLoopError,
    VertexRangeError,
)

__all__ = [
    "Graph",
    "build_graph",
    "induced_subgraph",
    "read_graph",
    "write_graph",
    "check_vertex_weights",
]


class Graph:
    """Undirected simple graph with sorted adjacency.

    Use :func:`build_graph` rather than the constructor so the invariants
    (no loops, no parallel edges, symmetric sorted adjacency) are enforced.
    """

    __slots__ = ("n", "m", "_adjacency", "_csr", "_masks")

    def __init__(self, n: int, adjacency: list[list[int]], m: int):
        self.n = n
        self._adjacency = adjacency
        self.m = m
        self._csr = None
        self._masks = None

    @classmethod
    def from_csr(cls, n: int, indptr, indices) -> "Graph":
        """Wrap existing CSR arrays without validation (trusted callers)."""
        g = cls(n, None, int(len(indices)) // 2)
        g._csr = (
            np.ascontiguousarray(indptr, dtype=np.int32),
            np.ascontiguousarray(indices, dtype=np.int32),
        )
        return g

    @property
    def adjacency(self) -> list[list[int]]:
        if self._adjacency is None:
            indptr, indices = self._csr
            idx = indices.tolist()
            ptr = indptr.tolist()
            self._adjacency = [idx[ptr[v] : ptr[v + 1]] for v in range(self.n)]
        return self._adjacency

    def adj(self, v: int) -> list[int]:
        return self.adjacency[v]

    def neighbors(self, v: int) -> list[int]:
        """Neighbor list of one vertex without materializing all of them."""
        if self._adjacency is not None:
            return self._adjacency[v]
        indptr, indices = self._csr
        return indices[int(indptr[v]) : int(indptr[v + 1])].tolist()

    def degree(self, v: int) -> int:
        if self._adjacency is not None:
            return len(self._adjacency[v])
        indptr = self._csr[0]
        return int(indptr[v + 1] - indptr[v])

    def has_edge(self, u: int, v: int) -> bool:
        if self._adjacency is not None:
            a = self._adjacency[u]
            lo, hi = 0, len(a)
            while lo < hi:
                mid = (lo + hi) // 2
                if a[mid] < v:
                    lo = mid + 1
                else:
                    hi = mid
            return lo < len(a) and a[lo] == v
        indptr, indices = self._csr
        lo, hi = int(indptr[u]), int(indptr[u + 1])
        pos = int(np.searchsorted(indices[lo:hi], v))
        return lo + pos < hi and indices[lo + pos] == v

    def edges(self) -> Iterable[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(u, v) arrays with u < v, lexicographically sorted."""
        indptr, indices = self.csr()
        u = np.repeat(np.arange(self.n, dtype=np.int32), np.diff(indptr))
        keep = u < indices
        return u[keep], indices[keep]

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) int32 arrays; built once and cached."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int32)
            for v in range(self.n):
                indptr[v + 1] = indptr[v] + len(self._adjacency[v])
            indices = np.empty(int(indptr[-1]), dtype=np.int32)
            pos = 0
            for v in range(self.n):
                a = self._adjacency[v]
                indices[pos : pos + len(a)] = a
                pos += len(a)
            self._csr = (indptr, indices)
        return self._csr

    def neighbor_masks(self) -> list[int]:
        """Adjacency as Python int bitmasks; cached. Intended for small n."""
        if self._masks is None:
            masks = []
            for v in range(self.n):
                acc = 0
                for u in self.adjacency[v]:
                    acc |= 1 << u
                masks.append(acc)
            self._masks = masks
        return self._masks

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.adjacency == other.adjacency
        )

    def __hash__(self):
        return hash((self.n, tuple(map(tuple, self.adjacency))))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Validate and build a graph from an edge list.

    Rejects out-of-range endpoints, self-loops and duplicate edges (as
    unordered pairs), each with its own error type.
    """
    if n < 0:
        raise GraphInputError(f"vertex count must be non-negative, got {n}")
    adjacency: list[list[int]] = [[] for _ in range(n)]
    seen = set()
    m = 0
    for u, v in edges:
        if not (0 <= u < n) or not (0 <= v < n):
            raise VertexRangeError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge ({key[0]}, {key[1]})")
        seen.add(key)
        adjacency[u].append(v)
        adjacency[v].append(u)
        m += 1
    for a in adjacency:
        a.sort()
    return Graph(n, adjacency, m)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``vertices``, relabeled to 0..k-1.

    Returns the subgraph and the index map: position i holds the original id
    of the new vertex i. Original relative order of ids is preserved.
    """
    vs = sorted(set(vertices))
    if vs and (vs[0] < 0 or vs[-1] >= g.n):
        raise VertexRangeError(f"vertex set not within [0, {g.n})")
    new_id = {orig: i for i, orig in enumerate(vs)}
    adjacency: list[list[int]] = [[] for _ in vs]
    m = 0
    for i, orig in enumerate(vs):
        for u in g.adjacency[orig]:
            j = new_id.get(u)
            if j is not None:
                adjacency[i].append(j)
                if j > i:
                    m += 1
    return Graph(len(vs), adjacency, m), vs


def _parse_int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"invalid {what} {token!r}", line=line_no) from None


def read_graph(source, fmt: str = "edge-list") -> Graph:
    """Read a graph from a path or text stream.

    ``edge-list``: header "n m", then m lines "u v" (0-based); '#' lines are
    comments. ``dimacs``: "p edge n m" header and "e u v" lines (1-based).
    Parse failures report line numbers.
    """
    if isinstance(source, (str, bytes)):
        with open(source, "r", encoding="utf-8") as fh:
            return read_graph(fh, fmt)
    if fmt == "edge-list":
        return _read_edge_list(source)
    if fmt == "dimacs":
        return _read_dimacs(source)
    raise GraphFormatError(f"unknown format {fmt!r}")


def _read_edge_list(stream) -> Graph:
    header = None
    edges = []
    n = m = 0
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) != 2:
                raise GraphFormatError(
                    f"header must be 'n m', got {len(tokens)} tokens", line=line_no
                )
            n = _parse_int(tokens[0], line_no, "vertex count")
            m = _parse_int(tokens[1], line_no, "edge count")
            header = line_no
            continue
        if len(tokens) != 2:
            raise GraphFormatError(
                f"edge line must have 2 tokens, got {len(tokens)}", line=line_no
            )
        u = _parse_int(tokens[0], line_no, "endpoint")
        v = _parse_int(tokens[1], line_no, "endpoint")
        try:
            _check_endpoint_range(u, v, n)
        except GraphInputError as exc:
            raise GraphFormatError(str(exc), line=line_no) from exc
        edges.append((u, v))
    if header is None:
        raise GraphFormatError("empty input, expected 'n m' header")
    if len(edges) != m:
        raise GraphFormatError(f"header promised {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def _read_dimacs(stream) -> Graph:
    n = m = None
    edges = []
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if n is not None:
                raise GraphFormatError("duplicate problem line", line=line_no)
            if len(tokens) != 4 or tokens[1] != "edge":
                raise GraphFormatError("problem line must be 'p edge n m'", line=line_no)
            n = _parse_int(tokens[2], line_no, "vertex count")
            m = _parse_int(tokens[3], line_no, "edge count")
        elif tokens[0] == "e":
            if n is None:
                raise GraphFormatError("edge before problem line", line=line_no)
            if len(tokens) != 3:
                raise GraphFormatError("edge line must be 'e u v'", line=line_no)
            u = _parse_int(tokens[1], line_no, "endpoint") - 1
            v = _parse_int(tokens[2], line_no, "endpoint") - 1
            try:
                _check_endpoint_range(u, v, n)
            except GraphInputError as exc:
                raise GraphFormatError(str(exc), line=line_no) from exc
            edges.append((u, v))
        else:
            raise GraphFormatError(f"unknown line type {tokens[0]!r}", line=line_no)
    if n is None:
        raise GraphFormatError("missing 'p edge' problem line")
    if len(edges) != m:
        raise GraphFormatError(f"header promised {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def _check_endpoint_range(u: int, v: int, n: int) -> None:
    if not (0 <= u < n) or not (0 <= v < n):
        raise VertexRangeError(f"edge ({u}, {v}) out of range for n={n}")


def write_graph(g: Graph, target=None, fmt: str = "edge-list") -> str | None:
    """Write ``g`` to a path/stream, or return the text when target is None.

    Edges are emitted sorted lexicographically, so output is deterministic.
    """
    us, vs = g.edge_arrays()
    buf = io.StringIO()
    if fmt == "edge-list":
        buf.write(f"{g.n} {g.m}\n")
        for u, v in zip(us.tolist(), vs.tolist()):
            buf.write(f"{u} {v}\n")
    elif fmt == "dimacs":
        buf.write(f"p edge {g.n} {g.m}\n")
        for u, v in zip(us.tolist(), vs.tolist()):
            buf.write(f"e {u + 1} {v + 1}\n")
    else:
        raise GraphFormatError(f"unknown format {fmt!r}")
    text = buf.getvalue()
    if target is None:
        return text
    if isinstance(target, (str, bytes)):
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        target.write(text)
    return None


def check_vertex_weights(
    g: Graph, values: Sequence, *, integral: bool = False, name: str = "weights"
) -> list:
    """Validate a per-vertex weight vector: length n, all values >= 0."""
    vals = list(values)
    if len(vals) != g.n:
        raise GraphInputError(f"{name} has length {len(vals)}, expected n={g.n}")
    for v, x in enumerate(vals):
        if integral and not isinstance(x, (int, np.integer)):
            raise GraphInputError(f"{name}[{v}] = {x!r} is not an integer")
        if x < 0:
            raise GraphInputError(f"{name}[{v}] = {x!r} is negative")
    return vals
