"""Vertex-capacitated s-t flow and global minimum vertex cut.

The s-t flow needs a single quotient computation at the lowest common
ancestor of s and t: the quotient inherits module capacity sums, the flow is
solved on its vertex-split network, and the closed-form augmentation adds
the capacities of s's neighbors outside the LCA module. The global cut runs
full bottom-up recurrences with per-node (capacity sum, cut value) pairs;
infinity is represented by math.inf and surfaces as a "no cut" report, never
as a sentinel magnitude.
"""

from __future__ import annotations

import math
import time

from .errors import PreconditionError
from .flow import FlowResult, max_flow, min_cut_source_side, vertex_split
from .graph import Graph, check_vertex_weights
from .mdtree import decompose, lca, modular_width
from .report import SolveReport

__all__ = [
    "max_vertex_flow_mw",
    "global_vertex_mincut_mw",
    "quotient_global_vertex_cut",
]


def max_vertex_flow_mw(g: Graph, c, s: int, t: int) -> SolveReport:
    """Maximum s-t flow under vertex capacities c (entries for s, t ignored).

    Adjacent s, t make the flow unbounded, reported as a flag. Otherwise the
    value is the LCA-quotient flow plus the capacity of every common
    neighbor outside the LCA module.
    """
    if s == t:
        raise PreconditionError("max_vertex_flow_mw requires s != t")
    c = check_vertex_weights(g, c, name="capacities")
    t0 = time.perf_counter()
    if g.has_edge(s, t):
        return SolveReport(
            problem="vflow",
            value=None,
            unbounded=True,
            n=g.n,
            m=g.m,
            time_ms=(time.perf_counter() - t0) * 1e3,
            extra={"s": s, "t": t},
        )
    tree = decompose(g)
    mw = modular_width(tree)
    node = tree.nodes[lca(tree, s, t)]
    if node.kind == "parallel":
        inner_flow = 0
    else:
        # a series LCA would make s and t adjacent, which was ruled out
        assert node.kind == "prime", "series LCA implies adjacent endpoints"
        child_of = {}
        for ci, cid in enumerate(node.children):
            for v in tree.nodes[cid].vertices:
                child_of[v] = ci
        csums = [0] * len(node.children)
        for v in node.vertices:
            if v != s and v != t:
                csums[child_of[v]] += c[v]
        net = vertex_split(node.quotient, csums, child_of[s], child_of[t])
        inner_flow = max_flow(net).value
    module = set(node.vertices)
    outside = sum(c[v] for v in g.neighbors(s) if v not in module)
    value = inner_flow + outside
    return SolveReport(
        problem="vflow",
        value=value,
        n=g.n,
        m=g.m,
        time_ms=(time.perf_counter() - t0) * 1e3,
        mw=mw,
        node_counts=tree.kind_counts(),
        extra={"s": s, "t": t, "lca_kind": node.kind},
    )


def quotient_global_vertex_cut(quotient: Graph, cprime):
    """Minimum vertex-capacitated cut of a (quotient) graph.

    Minimum over non-adjacent vertex pairs of the pairwise split-network
    flow; (inf, None) when the graph is complete. Returns (value, separator
    vertex list or None).
    """
    if quotient.n < 2:
        raise PreconditionError("quotient_global_vertex_cut requires >= 2 vertices")
    best = math.inf
    best_sep = None
    for a in range(quotient.n):
        for b in range(a + 1, quotient.n):
            if quotient.has_edge(a, b):
                continue
            net = vertex_split(quotient, cprime, a, b)
            res = max_flow(net)
            if res.value < best:
                best = res.value
                best_sep = _split_separator(quotient, net, res, a, b)
    return best, best_sep


def _split_separator(g: Graph, net, res: FlowResult, s: int, t: int) -> list[int]:
    """Saturated split vertices on the residual boundary form the cut."""
    side = min_cut_source_side(net, res)
    sep = []
    for v in range(g.n):
        if v == s or v == t:
            continue
        if net.vertex_in[v] in side and net.vertex_out[v] not in side:
            sep.append(v)
    return sep


def global_vertex_mincut_mw(g: Graph, c=None) -> SolveReport:
    """Global minimum vertex cut under capacities c (unit when omitted).

    Bottom-up: leaves are uncuttable (inf); a parallel factor is already
    disconnected (0); a series factor extends the best child cut by the
    other modules' capacities; a prime factor takes the better of extended
    child cuts and a capacitated global cut of its quotient.
    """
    if g.n < 2:
        raise PreconditionError("global_vertex_mincut_mw requires n >= 2")
    if c is None:
        c = [1] * g.n
    c = check_vertex_weights(g, c, name="capacities")
    t0 = time.perf_counter()
    tree = decompose(g)
    mw = modular_width(tree)
    cap = [0] * len(tree.nodes)
    pi = [math.inf] * len(tree.nodes)
    cut: list = [None] * len(tree.nodes)
    for node in tree.nodes:
        if node.is_leaf:
            cap[node.id] = c[node.vertices[0]]
            continue
        kids = node.children
        cap[node.id] = sum(cap[k] for k in kids)
        if node.kind == "parallel":
            pi[node.id] = 0
            cut[node.id] = []
            continue
        best = math.inf
        best_cut = None
        if node.kind == "series":
            for k in kids:
                if pi[k] == math.inf:
                    continue
                cand = pi[k] + cap[node.id] - cap[k]
                if cand < best:
                    rest = [
                        v
                        for other in kids
                        if other != k
                        for v in tree.nodes[other].vertices
                    ]
                    best = cand
                    best_cut = sorted(cut[k] + rest)
        else:
            quotient = node.quotient
            for ci, k in enumerate(kids):
                if pi[k] == math.inf:
                    continue
                neigh = quotient.adjacency[ci]
                cand = pi[k] + sum(cap[kids[j]] for j in neigh)
                if cand < best:
                    ext = [v for j in neigh for v in tree.nodes[kids[j]].vertices]
                    best = cand
                    best_cut = sorted(cut[k] + ext)
            qval, qsep = quotient_global_vertex_cut(
                quotient, [cap[k] for k in kids]
            )
            if qval < best:
                best = qval
                best_cut = sorted(
                    v for j in qsep for v in tree.nodes[kids[j]].vertices
                )
        pi[node.id] = best
        cut[node.id] = best_cut
    value = pi[tree.root]
    unbounded = value == math.inf
    return SolveReport(
        problem="gvcut",
        value=None if unbounded else value,
        unbounded=unbounded,
        n=g.n,
        m=g.m,
        time_ms=(time.perf_counter() - t0) * 1e3,
        mw=mw,
        node_counts=tree.kind_counts(),
        witness=None if unbounded else cut[tree.root],
        extra={"complete": unbounded},
    )
