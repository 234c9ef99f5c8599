"""Oracle-comparison benchmark harness.

Every suite instance is generated from a recipe, solved by the
decomposition-based algorithm and by its unparameterized baseline kernel,
timed separately, and hard-asserted to agree. Records carry the instance
seed for exact replay and the active kernel implementation so compiled and
pure backends can be compared.
"""

from __future__ import annotations

import json
import random
import time

from . import _backend
from .errors import ModflowError
from .flow import max_flow, vertex_split
from .generate import generate_substitution, recipe_from_json
from .graph import Graph
from .matching import b_matching_max, blossom_max_matching
from .mdtree import decompose, modular_width
from .mincut import stoer_wagner_mincut
from .mwedgecut import edge_disjoint_st, global_edge_mincut
from .mwmatching import solve_bmatching_mw, solve_matching_mw
from .mwtriangles import count_triangles_mw
from .mwvertexcut import global_vertex_mincut_mw, max_vertex_flow_mw
from .report import BenchRecord

__all__ = ["run_bench", "load_suite", "BenchMismatch", "baseline_value", "PROBLEMS"]

PROBLEMS = ("matching", "bmatching", "triangles", "edp", "gmincut", "vflow", "gvcut")


class BenchMismatch(ModflowError):
    """A decomposition solver disagreed with its baseline."""


def unit_flow_lambda(g: Graph, s: int, t: int):
    """Whole-graph unit-capacity flow: the baseline for edge-disjoint paths."""
    import numpy as np

    us, vs = g.edge_arrays()
    tails = np.concatenate([us, vs])
    heads = np.concatenate([vs, us])
    caps = np.ones(len(tails), dtype=np.int64)
    value, _ = _backend.dinic(g.n, tails, heads, caps, s, t, want_flows=False)
    return int(value)


def whole_graph_vertex_flow(g: Graph, c, s: int, t: int):
    if g.has_edge(s, t):
        return None  # unbounded
    return max_flow(vertex_split(g, c, s, t)).value


def min_pairwise_vertex_cut(g: Graph, c):
    """Baseline global vertex cut: min split-flow over non-adjacent pairs."""
    import math

    best = math.inf
    for s in range(g.n):
        for t in range(s + 1, g.n):
            if not g.has_edge(s, t):
                value = max_flow(vertex_split(g, c, s, t)).value
                best = min(best, value)
    return None if best == math.inf else best


def baseline_value(problem: str, g: Graph, args: dict):
    if problem == "matching":
        return blossom_max_matching(g).size
    if problem == "bmatching":
        return b_matching_max(g, args["b"]).value
    if problem == "triangles":
        return _backend.triangle_count(g)
    if problem == "edp":
        return unit_flow_lambda(g, args["s"], args["t"])
    if problem == "gmincut":
        return stoer_wagner_mincut(g)[0]
    if problem == "vflow":
        return whole_graph_vertex_flow(g, args["c"], args["s"], args["t"])
    if problem == "gvcut":
        return min_pairwise_vertex_cut(g, args["c"])
    raise ModflowError(f"unknown problem {problem!r}")


def mw_value(problem: str, g: Graph, args: dict):
    if problem == "matching":
        return solve_matching_mw(g).value
    if problem == "bmatching":
        return solve_bmatching_mw(g, args["b"]).value
    if problem == "triangles":
        return count_triangles_mw(g).value
    if problem == "edp":
        return edge_disjoint_st(g, args["s"], args["t"]).value
    if problem == "gmincut":
        return global_edge_mincut(g).value
    if problem == "vflow":
        return max_vertex_flow_mw(g, args["c"], args["s"], args["t"]).value
    if problem == "gvcut":
        return global_vertex_mincut_mw(g, args["c"]).value
    raise ModflowError(f"unknown problem {problem!r}")


def _pick_args(problem: str, g: Graph, rng: random.Random, spec: dict) -> dict:
    args = {}
    if problem == "bmatching":
        bmax = int(spec.get("b_max", 3))
        args["b"] = [rng.randint(0, bmax) for _ in range(g.n)]
    if problem in ("vflow", "gvcut"):
        cmax = int(spec.get("cap_max", 8))
        args["c"] = [rng.randint(1, cmax) for _ in range(g.n)]
    if problem in ("edp", "vflow"):
        s = spec.get("s")
        t = spec.get("t")
        if s is None or t is None:
            pairs = None
            if problem == "vflow":
                pairs = [
                    (a, b)
                    for a in range(g.n)
                    for b in range(a + 1, g.n)
                    if not g.has_edge(a, b)
                ]
                if not pairs:
                    raise ModflowError("vflow instance is complete; no valid pair")
                s, t = pairs[rng.randrange(len(pairs))]
            else:
                s = rng.randrange(g.n)
                t = rng.randrange(g.n - 1)
                if t >= s:
                    t += 1
        args["s"], args["t"] = int(s), int(t)
    return args


def load_suite(source) -> dict:
    if isinstance(source, (str, bytes)):
        with open(source, "r", encoding="utf-8") as fh:
            return json.load(fh)
    return json.load(source)


def run_bench(suite: dict, impl: str = "auto") -> list[BenchRecord]:
    """Run a suite; returns paired mw/baseline records per instance.

    ``impl``: "auto" keeps the active backend, "pure"/"native" force one,
    "both" runs the whole suite once per available backend.
    """
    if impl == "both":
        records = []
        for name in _backend.available_backends():
            records.extend(run_bench(suite, name))
        return records
    previous = _backend.backend_name()
    if impl != "auto":
        _backend.set_backend(impl)
    try:
        return _run_bench_records(suite)
    finally:
        _backend.set_backend(previous)


def _run_bench_records(suite: dict) -> list[BenchRecord]:
    impl_name = _backend.backend_name()
    base_seed = int(suite.get("seed", 0))
    records: list[BenchRecord] = []
    for idx, spec in enumerate(suite["instances"]):
        problem = spec["problem"]
        if problem not in PROBLEMS:
            raise ModflowError(f"unknown problem {problem!r}")
        seed = int(spec.get("seed", base_seed * 1_000_003 + idx))
        rng = random.Random(seed)
        recipe = recipe_from_json(dict(spec["recipe"], seed=spec["recipe"].get("seed", seed)))
        g = generate_substitution(recipe)
        g.csr()
        mw = modular_width(decompose(g))
        args = _pick_args(problem, g, rng, spec)
        for repeat in range(int(spec.get("repeat", 1))):
            t0 = time.perf_counter()
            got = mw_value(problem, g, args)
            t_mw = (time.perf_counter() - t0) * 1e3
            t0 = time.perf_counter()
            want = baseline_value(problem, g, args)
            t_base = (time.perf_counter() - t0) * 1e3
            if got != want:
                raise BenchMismatch(
                    f"{problem} mismatch on seed {seed}: mw={got} baseline={want}"
                )
            records.append(
                BenchRecord(problem, g.n, g.m, mw, "mw", impl_name, got, t_mw, seed)
            )
            records.append(
                BenchRecord(
                    problem, g.n, g.m, mw, "baseline", impl_name, want, t_base, seed
                )
            )
    return records
