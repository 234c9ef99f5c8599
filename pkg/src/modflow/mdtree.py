"""Modular decomposition: tree construction, verification, and helpers.

The decomposition follows the classical recursive scheme: a disconnected
graph splits into components under a parallel node, a graph with
disconnected complement splits into co-components under a series node, and
otherwise the graph splits along its maximal modular partition under a prime
node. The partition itself is found by worklist partition refinement (every
part provably a module at the fixpoint) plus a closure-based search for the
maximal module through the pivot vertex; :func:`is_module` serves as the
independent verification oracle in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from . import _backend as kern
from .errors import PreconditionError
from .graph import Graph, build_graph

__all__ = [
    "MDNode",
    "MDTree",
    "decompose",
    "maximal_modular_partition",
    "is_module",
    "modular_width",
    "binarize_series",
    "lca",
    "dump_md",
]


@dataclass
class MDNode:
    id: int
    kind: str  # "leaf" | "parallel" | "series" | "prime"
    vertices: tuple[int, ...]  # module as root-graph vertex ids, sorted
    children: list[int] = field(default_factory=list)
    parent: int = -1
    _quotient: Optional[Graph] = None
    child_index: dict[int, int] = field(default_factory=dict)
    synthetic: bool = False  # inserted by binarize_series; module is not strong
    depth: int = 0

    @property
    def is_leaf(self) -> bool:
        return self.kind == "leaf"

    @property
    def quotient(self) -> Optional[Graph]:
        """Quotient graph on the children.

        Prime nodes carry theirs explicitly; parallel and series quotients
        (edgeless resp. complete) are materialized on first access so that
        decomposing graphs with huge degenerate nodes stays cheap.
        """
        if self._quotient is None and not self.is_leaf:
            ell = len(self.children)
            if self.kind == "parallel":
                self._quotient = build_graph(ell, [])
            elif self.kind == "series":
                self._quotient = build_graph(
                    ell, [(i, j) for i in range(ell) for j in range(i + 1, ell)]
                )
        return self._quotient


class MDTree:
    """Arena of MDNodes over a source graph."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.nodes: list[MDNode] = []
        self.root: int = -1
        self._leaf_of: Optional[list[int]] = None

    def add_node(self, kind, vertices, children, quotient=None, synthetic=False) -> int:
        nid = len(self.nodes)
        node = MDNode(nid, kind, tuple(vertices), list(children), -1, quotient,
                      {c: i for i, c in enumerate(children)}, synthetic)
        self.nodes.append(node)
        for c in children:
            self.nodes[c].parent = nid
        return nid

    def quotient_of(self, nid: int) -> Optional[Graph]:
        return self.nodes[nid].quotient

    def finalize(self, root: int) -> "MDTree":
        self.root = root
        leaf_of = [-1] * self.graph.n
        stack = [(root, 0)]
        while stack:
            nid, d = stack.pop()
            node = self.nodes[nid]
            node.depth = d
            if node.is_leaf:
                leaf_of[node.vertices[0]] = nid
            for c in node.children:
                stack.append((c, d + 1))
        self._leaf_of = leaf_of
        return self

    def leaf_of(self, v: int) -> int:
        return self._leaf_of[v]

    def preorder(self) -> Iterable[MDNode]:
        stack = [self.root]
        while stack:
            node = self.nodes[stack.pop()]
            yield node
            for c in reversed(node.children):
                stack.append(c)

    def kind_counts(self) -> dict[str, int]:
        counts = {"leaf": 0, "parallel": 0, "series": 0, "prime": 0}
        for node in self.preorder():
            counts[node.kind] += 1
        return counts

    def __len__(self):
        return len(self.nodes)


def is_module(g: Graph, s: Iterable[int]) -> bool:
    """True iff every outside vertex sees all of ``s`` or none of it."""
    members = set(s)
    if not members:
        raise PreconditionError("is_module: empty vertex set")
    k = len(members)
    if k == g.n or k == 1:
        return True
    cnt: dict[int, int] = {}
    for v in members:
        for u in g.adjacency[v]:
            if u not in members:
                cnt[u] = cnt.get(u, 0) + 1
    return all(c == k for c in cnt.values())


def _split_induced(n, indptr, indices, part_of):
    """Split a CSR graph along a vertex partition, fully vectorized.

    Parts are ordered by smallest contained vertex. Returns a list of
    (size, indptr, indices, vertex_ids) per part; vertex_ids maps each local
    id back to the input graph's ids (ascending).
    """
    part_of = np.asarray(part_of, dtype=np.int64)
    _, first, inverse = np.unique(part_of, return_index=True, return_inverse=True)
    # renumber parts by first occurrence = smallest member
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(len(first))
    pid = rank[inverse]
    nparts = len(first)
    sizes = np.bincount(pid, minlength=nparts)
    starts = np.zeros(nparts + 1, dtype=np.int64)
    np.cumsum(sizes, out=starts[1:])
    order = np.argsort(pid, kind="stable")  # grouped by part, ascending ids inside
    local = np.empty(n, dtype=np.int64)
    local[order] = np.arange(n, dtype=np.int64) - starts[pid[order]]

    deg = np.diff(indptr)
    u_all = np.repeat(np.arange(n, dtype=np.int64), deg)
    v_all = np.asarray(indices, dtype=np.int64)
    same = pid[u_all] == pid[v_all]
    eu = u_all[same]
    ev = v_all[same]
    ep = pid[eu]
    eorder = np.argsort(ep, kind="stable")  # keeps (u, v) lexicographic inside part
    eu = local[eu[eorder]]
    ev = local[ev[eorder]]
    bounds = np.searchsorted(ep[eorder], np.arange(nparts + 1))

    out = []
    for p in range(nparts):
        size = int(sizes[p])
        lo, hi = int(bounds[p]), int(bounds[p + 1])
        su = eu[lo:hi]
        sv = ev[lo:hi].astype(np.int32)
        sub_indptr = np.zeros(size + 1, dtype=np.int32)
        np.cumsum(np.bincount(su, minlength=size), out=sub_indptr[1:])
        verts = order[int(starts[p]) : int(starts[p + 1])]
        out.append((size, sub_indptr, sv, verts))
    return out


def _max_module_with_pivot(n, indptr, indices, px_labels):
    """Maximal proper module containing vertex 0 (input connected, co-connected).

    ``px_labels``: fixpoint partition refining {{0}, rest}; its parts are the
    maximal modules avoiding 0. Grow a module around 0 part by part; once the
    closure escapes to the whole vertex set, the last absorbed part lies
    outside the target module and a refinement pinned to it returns exactly
    the module we want.
    """
    labels = list(px_labels)
    in_c = np.zeros(n, dtype=bool)
    in_c[0] = True
    members = [0]
    while True:
        outside = np.flatnonzero(~in_c)
        z = int(outside[0])
        part_z = [v for v in range(n) if labels[v] == labels[z]]
        closed = kern.module_closure_raw(n, indptr, indices, members + part_z)
        if len(closed) == n:
            pivot = np.ones(n, dtype=np.int32)
            pivot[z] = 0
            lz = kern.refine_modular_raw(n, indptr, indices, pivot)
            return [v for v in range(n) if lz[v] == lz[0]]
        in_c[closed] = True
        members = closed


def _maximal_partition_csr(n, indptr, indices):
    """part_of labels of the maximal modular partition (prime split)."""
    init = np.ones(n, dtype=np.int32)
    init[0] = 0
    labels = kern.refine_modular_raw(n, indptr, indices, init)
    m_of_pivot = _max_module_with_pivot(n, indptr, indices, labels)
    part_of = np.asarray(labels, dtype=np.int64) + 1
    part_of[m_of_pivot] = 0  # parts inside the pivot module collapse into it
    return part_of


def decompose(g: Graph) -> MDTree:
    """Compute the modular decomposition tree.

    Deterministic: children are ordered by their smallest original vertex.
    """
    if g.n < 1:
        raise PreconditionError("decompose requires n >= 1")
    tree = MDTree(g)
    indptr, indices = g.csr()
    root = _decompose_rec(tree, g.n, indptr, indices,
                          np.arange(g.n, dtype=np.int64))
    return tree.finalize(root)


def _decompose_rec(tree, n, indptr, indices, orig):
    if n == 1:
        return tree.add_node("leaf", (int(orig[0]),), [])
    labels = kern.components_raw(n, indptr, indices)
    if max(labels) > 0:
        kind = "parallel"
        part_of = labels
    else:
        labels = kern.co_components_raw(n, indptr, indices)
        if max(labels) > 0:
            kind = "series"
            part_of = labels
        else:
            if n < 4:
                raise AssertionError("connected co-connected graph on < 4 vertices")
            kind = "prime"
            part_of = _maximal_partition_csr(n, indptr, indices)
    parts = _split_induced(n, indptr, indices, part_of)
    if kind == "prime" and len(parts) < 4:
        raise AssertionError("prime split produced fewer than 4 parts")
    children = []
    for size, sub_indptr, sub_indices, verts in parts:
        children.append(
            _decompose_rec(tree, size, sub_indptr, sub_indices, orig[verts])
        )
    quotient = None
    if kind == "prime":
        # parts are modules: one representative pair decides part adjacency
        ell = len(parts)
        reps = [int(p[3][0]) for p in parts]  # smallest local vertex per part
        rep_pos = {r: i for i, r in enumerate(reps)}
        qedges = set()
        for i, r in enumerate(reps):
            lo, hi = int(indptr[r]), int(indptr[r + 1])
            for u in indices[lo:hi].tolist():
                j = rep_pos.get(u)
                if j is not None and j > i:
                    qedges.add((i, j))
        quotient = build_graph(ell, sorted(qedges))
    verts_all = np.sort(orig)
    node = tree.add_node(kind, [int(v) for v in verts_all], children, quotient)
    return node


def maximal_modular_partition(g: Graph) -> list[list[int]]:
    """The coarsest partition of V into maximal proper strong modules.

    Preconditions: g connected, complement connected, n >= 4. Parts are
    returned sorted by smallest member.
    """
    if g.n < 4:
        raise PreconditionError("maximal modular partition requires n >= 4")
    indptr, indices = g.csr()
    if max(kern.components_raw(g.n, indptr, indices)) > 0:
        raise PreconditionError("graph must be connected")
    if max(kern.co_components_raw(g.n, indptr, indices)) > 0:
        raise PreconditionError("complement must be connected")
    part_of = _maximal_partition_csr(g.n, indptr, indices)
    groups: dict[int, list[int]] = {}
    for v, p in enumerate(np.asarray(part_of).tolist()):
        groups.setdefault(p, []).append(v)
    return sorted(groups.values(), key=lambda part: part[0])


def modular_width(t: MDTree) -> int:
    """max(2, largest child count over prime nodes)."""
    width = 2
    for node in t.preorder():
        if node.kind == "prime":
            width = max(width, len(node.children))
    return width


def binarize_series(t: MDTree) -> MDTree:
    """Rewrite series nodes with more than two children into binary chains.

    Each inserted node is flagged synthetic and carries a K_2 quotient, so
    bottom-up consumers can process it like a two-child prime node. Leaf set
    and represented modules are unchanged; node count stays <= 2n - 1.
    """
    out = MDTree(t.graph)

    def rec(old_id: int) -> int:
        node = t.nodes[old_id]
        if node.is_leaf:
            return out.add_node("leaf", node.vertices, [])
        kids = [rec(c) for c in node.children]
        if node.kind == "series" and len(kids) > 2:
            k2 = build_graph(2, [(0, 1)])
            acc = kids[0]
            acc_vertices = list(t.nodes[node.children[0]].vertices)
            for i in range(1, len(kids)):
                acc_vertices = sorted(acc_vertices + list(t.nodes[node.children[i]].vertices))
                top = i == len(kids) - 1
                acc = out.add_node("series", acc_vertices, [acc, kids[i]],
                                   quotient=k2, synthetic=not top)
            return acc
        quotient = node._quotient
        if node.kind == "series":
            quotient = build_graph(2, [(0, 1)])
        return out.add_node(node.kind, node.vertices, kids, quotient=quotient,
                            synthetic=node.synthetic)

    return out.finalize(rec(t.root))


def lca(t: MDTree, u: int, v: int) -> int:
    """Deepest node whose module contains both vertices."""
    if u == v:
        raise PreconditionError("lca requires two distinct vertices")
    a, b = t.leaf_of(u), t.leaf_of(v)
    na, nb = t.nodes[a], t.nodes[b]
    while na.id != nb.id:
        if na.depth >= nb.depth:
            na = t.nodes[na.parent]
        else:
            nb = t.nodes[nb.parent]
    return na.id


def dump_md(t: MDTree) -> str:
    """Human/machine readable tree dump, one node per line in pre-order.

    Line format: "id kind parent ell [vertex]" where leaves carry their
    vertex; quotient edges follow on indented lines.
    """
    lines = []

    def rec(nid: int) -> None:
        node = t.nodes[nid]
        if node.is_leaf:
            lines.append(f"{node.id} leaf {node.parent} 0 {node.vertices[0]}")
            return
        lines.append(f"{node.id} {node.kind} {node.parent} {len(node.children)}")
        if node.quotient is not None:
            for a, b in node.quotient.edges():
                lines.append(f"  {a} {b}")
        for c in node.children:
            rec(c)

    rec(t.root)
    return "\n".join(lines) + "\n"
