"""Maximum matching and maximum b-matching kernels.

The b-matching solver reduces to ordinary matching by the copy blow-up:
every vertex v becomes b(v) copies, copies of adjacent vertices are fully
interconnected, copies of one vertex stay non-adjacent, and the copy
matching projects back to edge multiplicities. Pseudo-polynomial in sum(b),
which is fine at the scales these kernels see; callers that cannot afford
the blow-up use the dual-enumeration path in :mod:`modflow.mwmatching`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend as kern
from .graph import Graph, check_vertex_weights

__all__ = ["Matching", "BMatchingResult", "blossom_max_matching", "b_matching_max"]


@dataclass(frozen=True)
class Matching:
    edges: frozenset[tuple[int, int]]

    @property
    def size(self) -> int:
        return len(self.edges)

    def vertices(self) -> set[int]:
        out = set()
        for u, v in self.edges:
            out.add(u)
            out.add(v)
        return out

    def is_valid(self, g: Graph) -> bool:
        seen = set()
        for u, v in self.edges:
            if u in seen or v in seen or not g.has_edge(u, v):
                return False
            seen.add(u)
            seen.add(v)
        return True


@dataclass
class BMatchingResult:
    multiplicity: dict[tuple[int, int], int]
    value: int

    def is_valid(self, g: Graph, b) -> bool:
        load = [0] * g.n
        for (u, v), x in self.multiplicity.items():
            if x < 0 or not g.has_edge(u, v):
                return False
            load[u] += x
            load[v] += x
        return all(load[v] <= b[v] for v in range(g.n)) and self.value == sum(
            self.multiplicity.values()
        )


def blossom_max_matching(g: Graph) -> Matching:
    """Maximum-cardinality matching via Edmonds' blossom algorithm."""
    match = kern.blossom_graph(g)
    edges = frozenset((v, match[v]) for v in range(g.n) if v < match[v])
    return Matching(edges)


def _blowup_csr(g: Graph, b: list[int]):
    """CSR arrays of the copy blow-up plus the copy -> vertex owner map."""
    barr = np.asarray(b, dtype=np.int64)
    offsets = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(barr, out=offsets[1:])
    total = int(offsets[-1])
    owner = np.repeat(np.arange(g.n, dtype=np.int64), barr)
    chunks = []
    degs = np.zeros(total, dtype=np.int64)
    for v in range(g.n):
        if barr[v] == 0:
            continue
        nbr_ranges = [
            np.arange(offsets[u], offsets[u + 1], dtype=np.int32)
            for u in g.adjacency[v]
            if barr[u] > 0
        ]
        if nbr_ranges:
            row = np.concatenate(nbr_ranges)
        else:
            row = np.empty(0, dtype=np.int32)
        chunks.extend([row] * int(barr[v]))
        degs[offsets[v] : offsets[v + 1]] = len(row)
    indptr = np.zeros(total + 1, dtype=np.int32)
    np.cumsum(degs, out=indptr[1:])
    indices = (
        np.concatenate(chunks).astype(np.int32)
        if chunks
        else np.empty(0, dtype=np.int32)
    )
    return total, indptr, indices, owner


def b_matching_max(g: Graph, b) -> BMatchingResult:
    """Maximum b-matching by blow-up; b(v) = 0 effectively deletes v."""
    b = check_vertex_weights(g, b, integral=True, name="b")
    total, indptr, indices, owner = _blowup_csr(g, b)
    if total == 0 or len(indices) == 0:
        return BMatchingResult({}, 0)
    match = kern.blossom_csr(total, indptr, indices)
    mult: dict[tuple[int, int], int] = {}
    value = 0
    owner_l = owner.tolist()
    for copy, mate in enumerate(match):
        if mate > copy:
            u, v = owner_l[copy], owner_l[mate]
            key = (u, v) if u < v else (v, u)
            mult[key] = mult.get(key, 0) + 1
            value += 1
    return BMatchingResult(mult, value)
