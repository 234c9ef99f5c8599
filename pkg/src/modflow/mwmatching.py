"""Maximum matching and b-matching through the modular decomposition.

Bottom-up over the series-binarized tree: parallel nodes sum their children;
every other internal node is compressed into a 3l-vertex auxiliary
b-matching instance built from the quotient graph and per-child (size,
matching value) statistics. Each child contributes a triple: two vertices of
bound f_i joined by an edge (re-matchable pairs) and one of bound n_i - 2f_i
(never-matched spares); adjacent triples are fully interconnected.

Solving the auxiliary instance exactly: the blow-up kernel is the default
and the reference; for instances whose bound sum is large the driver
switches to an equivalent dual enumeration over vertex classes
(kern.bmatch_dual), which keeps the per-node cost polynomial in l alone.
Both routes are cross-checked in the test suite.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import _backend as kern
from .errors import PreconditionError
from .graph import Graph, build_graph, check_vertex_weights
from .matching import BMatchingResult, Matching, b_matching_max
from .mdtree import MDTree, binarize_series, decompose, modular_width
from .report import SolveReport

__all__ = [
    "MatchStats",
    "AuxBMatchingInstance",
    "build_aux_instance",
    "solve_matching_mw",
    "solve_bmatching_mw",
    "matching_witness",
]

# blow-up is exact but pseudo-polynomial; beyond this bound-sum the dual
# enumeration (exact, 2^classes) takes over when the class count permits
_BLOWUP_SUM_LIMIT = 512
_DUAL_CLASS_LIMIT = 15


@dataclass(frozen=True)
class MatchStats:
    """Per-child statistics: total unit count and matching value."""

    n_i: int
    f_i: int


@dataclass
class AuxBMatchingInstance:
    graph: Graph  # 3l vertices: child i owns 3i, 3i+1, 3i+2
    bounds: list[int]

    @property
    def ell(self) -> int:
        return self.graph.n // 3


def build_aux_instance(quotient: Graph, stats: list[MatchStats]) -> AuxBMatchingInstance:
    """Compress per-child matching statistics into a b-matching instance."""
    ell = quotient.n
    if ell < 1:
        raise PreconditionError("auxiliary instance needs at least one module")
    if len(stats) != ell:
        raise PreconditionError(
            f"got {len(stats)} stats for a quotient on {ell} vertices"
        )
    bounds = []
    edges = []
    for i, st in enumerate(stats):
        if st.f_i < 0 or st.n_i < 2 * st.f_i:
            raise PreconditionError(
                f"invalid stats for module {i}: n={st.n_i}, f={st.f_i}"
            )
        bounds.extend([st.f_i, st.f_i, st.n_i - 2 * st.f_i])
        edges.append((3 * i, 3 * i + 1))
    for qi, qj in quotient.edges():
        for a in range(3):
            for b in range(3):
                edges.append((3 * qi + a, 3 * qj + b))
    return AuxBMatchingInstance(build_graph(3 * ell, edges), bounds)


def _aux_value(aux: AuxBMatchingInstance) -> int:
    total = sum(aux.bounds)
    if total <= _BLOWUP_SUM_LIMIT:
        return b_matching_max(aux.graph, aux.bounds).value
    keep = [v for v in range(aux.graph.n) if aux.bounds[v] > 0]
    if len(keep) <= _DUAL_CLASS_LIMIT:
        pos = {v: i for i, v in enumerate(keep)}
        masks = [0] * len(keep)
        for i, v in enumerate(keep):
            for u in aux.graph.adjacency[v]:
                j = pos.get(u)
                if j is not None:
                    masks[i] |= 1 << j
        return kern.bmatch_dual(masks, [aux.bounds[v] for v in keep])
    return b_matching_max(aux.graph, aux.bounds).value


def _bottom_up_values(tree: MDTree, leaf_unit) -> list[int]:
    """Bottom-up matching values; nodes appear in the arena children-first.

    ``leaf_unit`` gives each leaf's unit count: 1 for plain matching, the
    vertex's degree bound for b-matching. Units accumulate by summation and
    feed the n_i side of the per-node auxiliary instance.
    """
    values = [0] * len(tree.nodes)
    units = [0] * len(tree.nodes)
    for node in tree.nodes:
        if node.is_leaf:
            values[node.id] = 0
            units[node.id] = leaf_unit(node.vertices[0])
            continue
        units[node.id] = sum(units[c] for c in node.children)
        if node.kind == "parallel":
            values[node.id] = sum(values[c] for c in node.children)
        else:
            stats = [MatchStats(units[c], values[c]) for c in node.children]
            aux = build_aux_instance(node.quotient, stats)
            values[node.id] = _aux_value(aux)
    return values


def solve_matching_mw(g: Graph) -> SolveReport:
    """mu(g) via the decomposition; value equals the blossom kernel's."""
    t0 = time.perf_counter()
    tree = decompose(g)
    mw = modular_width(tree)
    btree = binarize_series(tree)
    values = _bottom_up_values(btree, lambda v: 1)
    value = values[btree.root]
    return SolveReport(
        problem="matching",
        value=value,
        n=g.n,
        m=g.m,
        time_ms=(time.perf_counter() - t0) * 1e3,
        mw=mw,
        node_counts=tree.kind_counts(),
    )


def solve_bmatching_mw(g: Graph, b) -> SolveReport:
    """Maximum b-matching value via the decomposition.

    Identical recursion; children carry bound sums instead of vertex counts.
    """
    b = check_vertex_weights(g, b, integral=True, name="b")
    t0 = time.perf_counter()
    tree = decompose(g)
    mw = modular_width(tree)
    btree = binarize_series(tree)
    values = _bottom_up_values(btree, lambda v: b[v])
    value = values[btree.root]
    return SolveReport(
        problem="bmatching",
        value=value,
        n=g.n,
        m=g.m,
        time_ms=(time.perf_counter() - t0) * 1e3,
        mw=mw,
        node_counts=tree.kind_counts(),
    )


def matching_witness(g: Graph) -> Matching:
    """An explicit maximum matching, reconstructed through the tree.

    Per non-parallel node: solve the auxiliary instance for multiplicities,
    keep that many matched pairs from each child's recursive witness, then
    realize every cross-module unit on distinct spare vertices of the two
    modules (all cross pairs are adjacent, modules being adjacent).
    """
    btree = binarize_series(decompose(g))
    witness: list[list[tuple[int, int]]] = [None] * len(btree.nodes)
    for node in btree.nodes:
        if node.is_leaf:
            witness[node.id] = []
            continue
        if node.kind == "parallel":
            out = []
            for c in node.children:
                out.extend(witness[c])
            witness[node.id] = out
            continue
        kids = node.children
        stats = [
            MatchStats(len(btree.nodes[c].vertices), len(witness[c])) for c in kids
        ]
        aux = build_aux_instance(node.quotient, stats)
        res: BMatchingResult = b_matching_max(aux.graph, aux.bounds)
        kept: list[tuple[int, int]] = []
        spares: list[list[int]] = []
        for i, c in enumerate(kids):
            x_i = res.multiplicity.get((3 * i, 3 * i + 1), 0)
            child_pairs = witness[c]
            kept.extend(child_pairs[:x_i])
            used = set()
            for u, v in child_pairs[:x_i]:
                used.add(u)
                used.add(v)
            spares.append([v for v in btree.nodes[c].vertices if v not in used])
        cross: dict[tuple[int, int], int] = {}
        for (a, b), x in res.multiplicity.items():
            i, j = a // 3, b // 3
            if i != j:
                key = (i, j) if i < j else (j, i)
                cross[key] = cross.get(key, 0) + x
        for (i, j) in sorted(cross):
            y = cross[(i, j)]
            assert len(spares[i]) >= y and len(spares[j]) >= y
            for _ in range(y):
                kept.append((spares[i].pop(0), spares[j].pop(0)))
        witness[node.id] = kept
    edges = frozenset(
        (u, v) if u < v else (v, u) for u, v in witness[btree.root]
    )
    return Matching(edges)
