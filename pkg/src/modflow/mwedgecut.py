"""Edge-disjoint s-t paths and global minimum edge cut via one quotient level.

Both problems need only the root modular partition of (the relevant
component of) the graph, never the full tree. For s-t paths: a series root
or s and t sharing a module forces the answer min(deg s, deg t); otherwise a
flow network on l + 2 nodes (the kernel) captures the cross-module edge
counts exactly. The global cut doubles each quotient vertex into a
minimum-internal-degree representative and the rest of its module, then runs
a weighted global min cut on the 2l-vertex graph.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import _backend as kern
from .errors import PreconditionError
from .flow import FlowNetwork, FlowResult, max_flow, min_cut_source_side, write_dimacs_flow
from .graph import Graph, build_graph, induced_subgraph
from .mdtree import _maximal_partition_csr
from .mincut import stoer_wagner_mincut
from .report import SolveReport

__all__ = [
    "EdgeFlowKernel",
    "edge_disjoint_st",
    "build_edge_flow_kernel",
    "global_edge_mincut",
    "emit_kernel",
]


@dataclass
class EdgeFlowKernel:
    net: FlowNetwork
    parts: list[list[int]]  # P': [ {s}, M_1 \ {s}, middles..., M_l \ {t}, {t} ]
    ell: int


def _root_partition(g: Graph):
    """('series' | 'prime', parts) for a connected graph on >= 2 vertices.

    Parts are vertex lists sorted by smallest member; for a series root they
    are the co-components, for a prime root the maximal modular partition.
    """
    indptr, indices = g.csr()
    labels = kern.co_components_raw(g.n, indptr, indices)
    if max(labels) > 0:
        kind = "series"
        part_of = labels
    else:
        kind = "prime"
        part_of = _maximal_partition_csr(g.n, indptr, indices)
    groups: dict[int, list[int]] = {}
    for v, p in enumerate(np.asarray(part_of).tolist()):
        groups.setdefault(p, []).append(v)
    return kind, sorted(groups.values(), key=lambda part: part[0])


def _quotient_of_partition(g: Graph, parts: list[list[int]]) -> Graph:
    reps = [p[0] for p in parts]
    edges = [
        (i, j)
        for i in range(len(parts))
        for j in range(i + 1, len(parts))
        if g.has_edge(reps[i], reps[j])
    ]
    return build_graph(len(parts), edges)


def build_edge_flow_kernel(g, s, t, partition, quotient) -> EdgeFlowKernel:
    """Flow network on l + 2 nodes whose max flow equals lambda_g(s, t).

    Node 0 is {s}, node l+1 is {t}; nodes 1..l carry the partition with s's
    module first and t's last (s and t removed from their modules). Every
    capacity is the exact number of graph edges between the two vertex sets,
    so empty parts simply give zero-capacity arcs.
    """
    idx_s = idx_t = None
    for i, part in enumerate(partition):
        if s in part:
            idx_s = i
        if t in part:
            idx_t = i
    if idx_s is None or idx_t is None:
        raise PreconditionError("s and t must be covered by the partition")
    if idx_s == idx_t:
        raise PreconditionError("s and t lie in the same module; kernel case absent")
    middle = [i for i in range(len(partition)) if i not in (idx_s, idx_t)]
    order = [idx_s] + middle + [idx_t]  # original part index per new label 1..l
    ell = len(partition)
    parts_prime: list[list[int]] = [[s]]
    parts_prime.append([v for v in partition[idx_s] if v != s])
    for i in middle:
        parts_prime.append(list(partition[i]))
    parts_prime.append([v for v in partition[idx_t] if v != t])
    parts_prime.append([t])

    qed = {(u, v) for u, v in quotient.edges()}
    qed |= {(v, u) for u, v in quotient.edges()}

    def parts_adjacent(a: int, b: int) -> bool:
        # labels in 0..l+1; adjacency inherited from the quotient with the
        # added endpoints copying their module's neighborhood
        pa = 1 if a == 0 else (ell if a == ell + 1 else a)
        pb = 1 if b == 0 else (ell if b == ell + 1 else b)
        if a == 0 and b == 1 or a == ell and b == ell + 1:
            return True
        if pa == pb:
            return False
        return (order[pa - 1], order[pb - 1]) in qed

    s_internal_deg = sum(1 for u in g.neighbors(s) if u in set(partition[idx_s]))
    t_internal_deg = sum(1 for u in g.neighbors(t) if u in set(partition[idx_t]))

    net = FlowNetwork(ell + 2, 0, ell + 1)
    for a in range(ell + 2):
        for b in range(a + 1, ell + 2):
            if not parts_adjacent(a, b):
                continue
            if a == 0 and b == 1:
                cap = s_internal_deg
            elif a == ell and b == ell + 1:
                cap = t_internal_deg
            else:
                cap = len(parts_prime[a]) * len(parts_prime[b])
            net.add_edge(a, b, cap)
    return EdgeFlowKernel(net, parts_prime, ell)


def _min_degree_answer(g: Graph, s: int, t: int) -> tuple[int, list[tuple[int, int]]]:
    ds, dt = g.degree(s), g.degree(t)
    v = s if ds <= dt else t
    cut = [(min(v, u), max(v, u)) for u in g.neighbors(v)]
    return min(ds, dt), cut


def edge_disjoint_st(g: Graph, s: int, t: int) -> SolveReport:
    """Maximum number of edge-disjoint s-t paths (= minimum s-t edge cut)."""
    if s == t:
        raise PreconditionError("edge_disjoint_st requires s != t")
    t0 = time.perf_counter()
    value, cut, kernel_used = _edge_disjoint_value(g, s, t)
    return SolveReport(
        problem="edp",
        value=value,
        n=g.n,
        m=g.m,
        time_ms=(time.perf_counter() - t0) * 1e3,
        witness=cut,
        extra={"kernel_case": kernel_used, "s": s, "t": t},
    )


def _edge_disjoint_value(g: Graph, s: int, t: int):
    labels = kern.components(g)
    if labels[s] != labels[t]:
        return 0, [], False
    if max(labels) > 0:
        comp = [v for v in range(g.n) if labels[v] == labels[s]]
        sub, orig = induced_subgraph(g, comp)
        pos = {o: i for i, o in enumerate(orig)}
        value, cut, kernel_used = _edge_disjoint_connected(sub, pos[s], pos[t])
        cut = [(min(orig[a], orig[b]), max(orig[a], orig[b])) for a, b in cut]
        return value, cut, kernel_used
    return _edge_disjoint_connected(g, s, t)


def _edge_disjoint_connected(g: Graph, s: int, t: int):
    kind, parts = _root_partition(g)
    if kind == "series":
        value, cut = _min_degree_answer(g, s, t)
        return value, cut, False
    part_of = {}
    for i, part in enumerate(parts):
        for v in part:
            part_of[v] = i
    if part_of[s] == part_of[t]:
        value, cut = _min_degree_answer(g, s, t)
        return value, cut, False
    quotient = _quotient_of_partition(g, parts)
    kernel = build_edge_flow_kernel(g, s, t, parts, quotient)
    res = max_flow(kernel.net)
    cut = _expand_kernel_cut(g, kernel, res)
    return res.value, cut, True


def _expand_kernel_cut(g: Graph, kernel: EdgeFlowKernel, res: FlowResult):
    """Concrete crossing edges of g for the kernel's minimum cut."""
    side = min_cut_source_side(kernel.net, res)
    cut = []
    seen_pairs = set()
    net = kernel.net
    for k in range(net.num_arcs):
        a, b = net.tails[k], net.heads[k]
        if a in side and b not in side and (a, b) not in seen_pairs:
            seen_pairs.add((a, b))
            pa, pb = kernel.parts[a], kernel.parts[b]
            if a == 0 and b == 1:
                inner = set(pb)
                cut.extend(
                    (min(pa[0], u), max(pa[0], u))
                    for u in g.neighbors(pa[0])
                    if u in inner
                )
            elif a == kernel.ell and b == kernel.ell + 1:
                inner = set(pa)
                cut.extend(
                    (min(pb[0], u), max(pb[0], u))
                    for u in g.neighbors(pb[0])
                    if u in inner
                )
            else:
                cut.extend((min(u, v), max(u, v)) for u in pa for v in pb)
    return sorted(set(cut))


def global_edge_mincut(g: Graph) -> SolveReport:
    """Global minimum edge cut lambda(g) with a witness side."""
    if g.n < 2:
        raise PreconditionError("global_edge_mincut requires n >= 2")
    t0 = time.perf_counter()
    labels = kern.components(g)
    delta = min(g.degree(v) for v in range(g.n))
    if max(labels) > 0:
        value = 0
        side = sorted(v for v in range(g.n) if labels[v] == 0)
    else:
        kind, parts = _root_partition(g)
        if kind == "series":
            degs = [g.degree(v) for v in range(g.n)]
            v = degs.index(min(degs))
            value, side = degs[v], [v]
        else:
            value, side = _global_cut_prime(g, parts)
    assert value <= delta
    return SolveReport(
        problem="gmincut",
        value=value,
        n=g.n,
        m=g.m,
        time_ms=(time.perf_counter() - t0) * 1e3,
        witness=sorted(side),
    )


def _global_cut_prime(g: Graph, parts: list[list[int]]):
    """Weighted 2l-vertex contraction: per module, a minimum-internal-degree
    representative plus the rest; capacities are exact cross edge counts."""
    reps = []
    rep_deg = []
    for part in parts:
        inner = set(part)
        best_v, best_d = None, None
        for v in part:
            d = sum(1 for u in g.neighbors(v) if u in inner)
            if best_d is None or d < best_d:
                best_v, best_d = v, d
        reps.append(best_v)
        rep_deg.append(best_d)
    # active contracted vertices: rep singletons always, leftovers if nonempty
    node_sets: list[list[int]] = []
    node_module: list[int] = []
    rep_node = [None] * len(parts)
    rest_node = [None] * len(parts)
    for i, part in enumerate(parts):
        rep_node[i] = len(node_sets)
        node_sets.append([reps[i]])
        node_module.append(i)
        rest = [v for v in part if v != reps[i]]
        if rest:
            rest_node[i] = len(node_sets)
            node_sets.append(rest)
            node_module.append(i)
    quotient = _quotient_of_partition(g, parts)
    qadj = {(u, v) for u, v in quotient.edges()}
    qadj |= {(v, u) for u, v in quotient.edges()}
    edges = []
    weights = {}
    k = len(node_sets)
    for a in range(k):
        for b in range(a + 1, k):
            ma, mb = node_module[a], node_module[b]
            if ma == mb:
                w = rep_deg[ma]
            elif (ma, mb) in qadj:
                w = len(node_sets[a]) * len(node_sets[b])
            else:
                continue
            edges.append((a, b))
            weights[(a, b)] = w
    gstar = build_graph(k, edges)
    value, side_nodes = stoer_wagner_mincut(gstar, weights)
    side = []
    for a in side_nodes:
        side.extend(node_sets[a])
    return value, side


def emit_kernel(g: Graph, s: int, t: int, path) -> EdgeFlowKernel:
    """Write an equivalent max-flow instance in DIMACS format.

    In the kernel case (prime root, s and t in distinct modules) the written
    network has at most mw + 2 nodes; otherwise a trivial two-node instance
    carrying the already-known answer is emitted. Output is deterministic.
    """
    if s == t:
        raise PreconditionError("emit_kernel requires s != t")
    labels = kern.components(g)
    kernel = None
    if labels[s] != labels[t]:
        trivial_value = 0
    else:
        if max(labels) > 0:
            comp = [v for v in range(g.n) if labels[v] == labels[s]]
            sub, orig = induced_subgraph(g, comp)
            pos = {o: i for i, o in enumerate(orig)}
            work, ws, wt = sub, pos[s], pos[t]
        else:
            work, ws, wt = g, s, t
        kind, parts = _root_partition(work)
        part_of = {}
        for i, part in enumerate(parts):
            for v in part:
                part_of[v] = i
        if kind == "prime" and part_of[ws] != part_of[wt]:
            quotient = _quotient_of_partition(work, parts)
            kernel = build_edge_flow_kernel(work, ws, wt, parts, quotient)
        else:
            trivial_value = min(work.degree(ws), work.degree(wt))
    if kernel is None:
        net = FlowNetwork(2, 0, 1)
        net.add_edge(0, 1, trivial_value)
        kernel = EdgeFlowKernel(net, [[s], [t]], 0)
    write_dimacs_flow(kernel.net, path)
    return kernel
