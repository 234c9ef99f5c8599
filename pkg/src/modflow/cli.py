"""Command line interface.

    modflow <problem> <graph-file> [--format edge-list|dimacs] [--s N --t N]
            [--capacities FILE] [--b FILE] [--emit-kernel PATH] [--dump-md]
            [--oracle] [--json]
    modflow bench --suite FILE --out FILE [--csv FILE] [--impl IMPL]
    modflow gen --recipe FILE --out FILE

Exit code 0 on success, 2 on a value mismatch in --oracle mode.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import _backend, bench
from .errors import ModflowError
from .generate import generate_substitution, recipe_from_json
from .graph import read_graph, write_graph
from .mdtree import decompose, dump_md
from .mwedgecut import edge_disjoint_st, emit_kernel, global_edge_mincut
from .mwmatching import matching_witness, solve_bmatching_mw, solve_matching_mw
from .mwtriangles import count_triangles_mw
from .mwvertexcut import global_vertex_mincut_mw, max_vertex_flow_mw
from .report import bench_csv


def _read_values(path, n, what):
    with open(path, "r", encoding="utf-8") as fh:
        values = [int(line.strip()) for line in fh if line.strip()]
    if len(values) != n:
        raise ModflowError(f"{what} file has {len(values)} values, expected {n}")
    return values


def _solve(args) -> int:
    g = read_graph(args.graph, args.format)
    problem = args.problem
    if problem in ("edp", "vflow") and (args.s is None or args.t is None):
        raise ModflowError(f"{problem} requires --s and --t")
    b = c = None
    if problem == "bmatching":
        if args.b is None:
            raise ModflowError("bmatching requires --b FILE")
        b = _read_values(args.b, g.n, "b")
    if problem in ("vflow", "gvcut"):
        if args.capacities is not None:
            c = _read_values(args.capacities, g.n, "capacities")
        elif problem == "vflow":
            raise ModflowError("vflow requires --capacities FILE")

    if problem == "matching":
        report = solve_matching_mw(g)
        if g.n <= 512:
            report.witness = sorted(matching_witness(g).edges)
    elif problem == "bmatching":
        report = solve_bmatching_mw(g, b)
    elif problem == "triangles":
        report = count_triangles_mw(g)
    elif problem == "edp":
        report = edge_disjoint_st(g, args.s, args.t)
    elif problem == "gmincut":
        report = global_edge_mincut(g)
    elif problem == "vflow":
        report = max_vertex_flow_mw(g, c, args.s, args.t)
    elif problem == "gvcut":
        report = global_vertex_mincut_mw(g, c)
    else:
        raise ModflowError(f"unknown problem {problem!r}")

    if args.emit_kernel:
        if problem != "edp":
            raise ModflowError("--emit-kernel only applies to edp")
        emit_kernel(g, args.s, args.t, args.emit_kernel)
    if args.dump_md:
        sys.stdout.write(dump_md(decompose(g)))

    mismatch = False
    if args.oracle:
        bl_args = {"s": args.s, "t": args.t, "b": b, "c": c}
        want = bench.baseline_value(problem, g, bl_args)
        got = None if report.unbounded else report.value
        mismatch = got != want
        report.extra["oracle_value"] = want
        report.extra["oracle_match"] = not mismatch

    if args.json:
        print(report.to_json())
    else:
        value = "unbounded" if report.unbounded else report.value
        print(f"{problem}: value={value} n={g.n} m={g.m} "
              f"mw={report.mw} time_ms={report.time_ms:.2f}")
        if args.oracle:
            print(f"oracle: value={report.extra['oracle_value']} "
                  f"match={report.extra['oracle_match']}")
    return 2 if mismatch else 0


def _bench(args) -> int:
    suite = bench.load_suite(args.suite)
    records = bench.run_bench(suite, impl=args.impl)
    payload = [r.to_dict() for r in records]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    else:
        json.dump(payload, sys.stdout, indent=1)
        sys.stdout.write("\n")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(bench_csv(records))
    return 0


def _gen(args) -> int:
    with open(args.recipe, "r", encoding="utf-8") as fh:
        recipe = recipe_from_json(json.load(fh))
    g = generate_substitution(recipe)
    write_graph(g, args.out)
    print(f"wrote {args.out}: n={g.n} m={g.m}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="modflow",
        description="modular-decomposition based graph solvers "
        f"(kernel backend: {_backend.backend_name()})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in bench.PROBLEMS:
        p = sub.add_parser(name, help=f"solve {name}")
        p.add_argument("graph", help="graph file")
        p.add_argument("--format", choices=["edge-list", "dimacs"],
                       default="edge-list")
        p.add_argument("--s", type=int, default=None)
        p.add_argument("--t", type=int, default=None)
        p.add_argument("--capacities", default=None, help="one value per line")
        p.add_argument("--b", default=None, help="one degree bound per line")
        p.add_argument("--emit-kernel", default=None, metavar="PATH")
        p.add_argument("--dump-md", action="store_true")
        p.add_argument("--oracle", action="store_true",
                       help="also run the baseline; exit 2 on mismatch")
        p.add_argument("--json", action="store_true")
        p.set_defaults(problem=name, func=_solve)

    p = sub.add_parser("bench", help="run a benchmark suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--csv", default=None)
    p.add_argument("--impl", default="auto",
                   choices=["auto", "pure", "native", "both"])
    p.set_defaults(func=_bench)

    p = sub.add_parser("gen", help="expand a substitution recipe to a graph file")
    p.add_argument("--recipe", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_gen)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ModflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
