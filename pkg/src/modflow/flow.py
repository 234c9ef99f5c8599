"""Flow networks, blocking-flow max flow, and the vertex-split reduction."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from . import _backend as kern
from . import _kern_py
from .errors import GraphFormatError, PreconditionError
from .graph import Graph

__all__ = [
    "FlowNetwork",
    "FlowResult",
    "max_flow",
    "min_cut_source_side",
    "vertex_split",
    "flow_paths",
    "write_dimacs_flow",
    "read_dimacs_flow",
]


@dataclass
class FlowNetwork:
    """Directed arcs with non-negative capacities and fixed source/sink.

    Arc order is the construction order; algorithms honour it, so results
    are deterministic.
    """

    num_nodes: int
    source: int
    sink: int
    tails: list[int] = field(default_factory=list)
    heads: list[int] = field(default_factory=list)
    caps: list = field(default_factory=list)

    def __post_init__(self):
        if self.source == self.sink:
            raise PreconditionError("source and sink must differ")

    def add_arc(self, tail: int, head: int, cap) -> int:
        if cap < 0:
            raise PreconditionError(f"negative capacity {cap!r}")
        self.tails.append(tail)
        self.heads.append(head)
        self.caps.append(cap)
        return len(self.caps) - 1

    def add_edge(self, u: int, v: int, cap) -> tuple[int, int]:
        """Undirected edge as a pair of opposite arcs of equal capacity."""
        return self.add_arc(u, v, cap), self.add_arc(v, u, cap)

    @property
    def num_arcs(self) -> int:
        return len(self.caps)


@dataclass
class FlowResult:
    value: int | float
    flows: list  # aligned with the network's arcs


def max_flow(net: FlowNetwork) -> FlowResult:
    """Maximum flow (Dinic). Integral whenever all capacities are integral."""
    if all(isinstance(c, int) for c in net.caps):
        value, flows = kern.dinic(
            net.num_nodes, net.tails, net.heads, net.caps, net.source, net.sink
        )
        return FlowResult(int(value), [int(f) for f in flows])
    # float capacities take the pure kernel; exactness guarantees only hold
    # for integers, which is all the package itself ever generates
    value, flows = _kern_py.dinic(
        net.num_nodes, net.tails, net.heads, net.caps, net.source, net.sink
    )
    return FlowResult(value, flows)


def min_cut_source_side(net: FlowNetwork, result: FlowResult) -> set[int]:
    """Nodes reachable from the source in the residual graph."""
    adj: list[list[tuple[int, int, bool]]] = [[] for _ in range(net.num_nodes)]
    for k in range(net.num_arcs):
        adj[net.tails[k]].append((net.heads[k], k, True))
        adj[net.heads[k]].append((net.tails[k], k, False))
    seen = [False] * net.num_nodes
    seen[net.source] = True
    queue = deque([net.source])
    while queue:
        v = queue.popleft()
        for w, k, forward in adj[v]:
            residual = net.caps[k] - result.flows[k] if forward else result.flows[k]
            if residual > 0 and not seen[w]:
                seen[w] = True
                queue.append(w)
    return {v for v in range(net.num_nodes) if seen[v]}


def vertex_split(g: Graph, c, s: int, t: int) -> FlowNetwork:
    """Reduce vertex capacities to arc capacities by splitting vertices.

    Every v outside {s, t} becomes v_in -> v_out with capacity c(v); each
    undirected edge becomes a pair of arcs of effectively infinite capacity
    (sum of all finite capacities plus one, keeping arithmetic integral when
    the input is). The max flow of the result equals the maximum s-t
    vertex-capacitated flow. Capacities for s and t are ignored.
    """
    if s == t:
        raise PreconditionError("vertex_split requires s != t")
    inner = [v for v in range(g.n) if v != s and v != t]
    cap_of = {v: c[v] for v in inner}
    inf = sum(cap_of.values()) + 1
    node_in = {}
    node_out = {}
    node_in[s] = node_out[s] = 0
    node_in[t] = node_out[t] = 1
    nxt = 2
    for v in inner:
        node_in[v] = nxt
        node_out[v] = nxt + 1
        nxt += 2
    net = FlowNetwork(nxt, 0, 1)
    net.vertex_in = node_in  # used by separator extraction
    net.vertex_out = node_out
    net.split_arcs = {}
    for v in inner:
        net.split_arcs[v] = net.add_arc(node_in[v], node_out[v], cap_of[v])
    for u, v in g.edges():
        net.add_arc(node_out[u], node_in[v], inf)
        net.add_arc(node_out[v], node_in[u], inf)
    return net


def flow_paths(net: FlowNetwork, result: FlowResult) -> list[tuple[list[int], int]]:
    """Decompose an integral flow into source-sink paths (for testing)."""
    residual = [int(f) for f in result.flows]
    out_arcs: list[list[int]] = [[] for _ in range(net.num_nodes)]
    for k in range(net.num_arcs):
        out_arcs[net.tails[k]].append(k)
    paths = []
    while True:
        path = [net.source]
        used_arcs = []
        v = net.source
        amount = None
        visited = {net.source}
        while v != net.sink:
            nxt = None
            for k in out_arcs[v]:
                if residual[k] > 0 and net.heads[k] not in visited:
                    nxt = k
                    break
            if nxt is None:
                break
            used_arcs.append(nxt)
            amount = residual[nxt] if amount is None else min(amount, residual[nxt])
            v = net.heads[nxt]
            visited.add(v)
            path.append(v)
        if v != net.sink or not used_arcs:
            break
        for k in used_arcs:
            residual[k] -= amount
        paths.append((path, amount))
    return paths


def write_dimacs_flow(net: FlowNetwork, target=None) -> str | None:
    """DIMACS max-flow text: "p max n m", "n <id> s/t", "a u v cap" (1-based)."""
    lines = [f"p max {net.num_nodes} {net.num_arcs}"]
    lines.append(f"n {net.source + 1} s")
    lines.append(f"n {net.sink + 1} t")
    for k in range(net.num_arcs):
        lines.append(f"a {net.tails[k] + 1} {net.heads[k] + 1} {net.caps[k]}")
    text = "\n".join(lines) + "\n"
    if target is None:
        return text
    if isinstance(target, (str, bytes)):
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        target.write(text)
    return None


def read_dimacs_flow(source) -> FlowNetwork:
    if isinstance(source, (str, bytes)):
        with open(source, "r", encoding="utf-8") as fh:
            return read_dimacs_flow(fh)
    num = None
    arcs = []
    source_id = sink_id = None
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "max":
                raise GraphFormatError("problem line must be 'p max n m'", line=line_no)
            num = int(tok[2])
        elif tok[0] == "n":
            if len(tok) != 3 or tok[2] not in ("s", "t"):
                raise GraphFormatError("node line must be 'n <id> s|t'", line=line_no)
            if tok[2] == "s":
                source_id = int(tok[1]) - 1
            else:
                sink_id = int(tok[1]) - 1
        elif tok[0] == "a":
            if len(tok) != 4:
                raise GraphFormatError("arc line must be 'a u v cap'", line=line_no)
            arcs.append((int(tok[1]) - 1, int(tok[2]) - 1, int(tok[3])))
        else:
            raise GraphFormatError(f"unknown line type {tok[0]!r}", line=line_no)
    if num is None or source_id is None or sink_id is None:
        raise GraphFormatError("missing problem or node lines")
    net = FlowNetwork(num, source_id, sink_id)
    for u, v, cap in arcs:
        net.add_arc(u, v, cap)
    return net
