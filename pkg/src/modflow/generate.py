"""Graph generators with controlled modular structure.

A substitution recipe names a quotient template and one child recipe per
slot; expanding it replaces each quotient vertex by its child graph and
joins children of adjacent slots completely. By construction every recipe
module is a module of the output, so the modular width of the result is
bounded by the largest quotient arity used (given prime templates).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import PreconditionError
from .graph import Graph, build_graph

__all__ = [
    "NAMED_QUOTIENTS",
    "SubstitutionRecipe",
    "generate_substitution",
    "random_prime_graph",
    "recipe_from_json",
    "random_graph",
]

NAMED_QUOTIENTS: dict[str, tuple[int, list[tuple[int, int]]]] = {
    "K2": (2, [(0, 1)]),
    "P4": (4, [(0, 1), (1, 2), (2, 3)]),
    "C5": (5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
    "C7": (7, [(i, (i + 1) % 7) for i in range(7)]),
    "bull": (5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)]),
    "petersen": (
        10,
        [(i, (i + 1) % 5) for i in range(5)]
        + [(i, i + 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)],
    ),
}


ChildSpec = Union[str, dict, "SubstitutionRecipe"]


@dataclass
class SubstitutionRecipe:
    quotient: Union[str, dict, Graph]
    children: list[ChildSpec]
    seed: int = 0


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return build_graph(n, edges)


def random_prime_graph(ell: int, p: float, rng: random.Random) -> Graph:
    """Rejection-sample G(ell, p) until the graph has only trivial modules."""
    from .mdtree import decompose  # local import to avoid a cycle

    if ell < 4:
        raise PreconditionError("prime graphs need at least 4 vertices")
    for _ in range(2000):
        g = random_graph(ell, p, rng)
        tree = decompose(g)
        root = tree.nodes[tree.root]
        if root.kind == "prime" and len(root.children) == ell:
            return g
    raise PreconditionError(f"could not sample a prime graph on {ell} vertices")


def _resolve_quotient(spec, rng: random.Random) -> Graph:
    if isinstance(spec, Graph):
        return spec
    if isinstance(spec, str):
        if spec not in NAMED_QUOTIENTS:
            raise PreconditionError(f"unknown quotient template {spec!r}")
        n, edges = NAMED_QUOTIENTS[spec]
        return build_graph(n, edges)
    if isinstance(spec, dict):
        if "random_prime" in spec:
            params = spec["random_prime"]
            return random_prime_graph(
                int(params["ell"]), float(params.get("p", 0.5)), rng
            )
        if "edges" in spec:
            return build_graph(int(spec["n"]), [tuple(e) for e in spec["edges"]])
        if "name" in spec:
            return _resolve_quotient(spec["name"], rng)
    raise PreconditionError(f"malformed quotient template {spec!r}")


def _expand_child(child: ChildSpec, rng: random.Random) -> Graph:
    if isinstance(child, str):
        if child == "leaf":
            return build_graph(1, [])
        raise PreconditionError(f"malformed child spec {child!r}")
    if isinstance(child, SubstitutionRecipe):
        return _expand(child, random.Random(child.seed))
    if isinstance(child, dict):
        if "clique" in child:
            k = int(child["clique"])
            return build_graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])
        if "independent" in child:
            return build_graph(int(child["independent"]), [])
        if "random" in child:
            params = child["random"]
            return random_graph(
                int(params["n"]), float(params.get("p", 0.5)), rng
            )
        if "quotient" in child:
            return _expand(recipe_from_json(child), random.Random(child.get("seed", rng.getrandbits(48))))
    raise PreconditionError(f"malformed child spec {child!r}")


def _expand(recipe: SubstitutionRecipe, rng: random.Random) -> Graph:
    quotient = _resolve_quotient(recipe.quotient, rng)
    ell = quotient.n
    kids = list(recipe.children)
    if len(kids) == 1 and ell > 1:
        kids = kids * ell  # one spec fills all slots
    if len(kids) != ell:
        raise PreconditionError(
            f"recipe has {len(kids)} children for a quotient on {ell} vertices"
        )
    graphs = [_expand_child(k, rng) for k in kids]
    return compose(quotient, graphs)


def compose(quotient: Graph, factors: list[Graph]) -> Graph:
    """Substitute factor i into quotient slot i.

    Cross edges join every vertex pair of factors sitting on adjacent
    quotient slots. Built directly in CSR form so large compositions stay
    cheap.
    """
    ell = quotient.n
    sizes = [f.n for f in factors]
    offsets = np.zeros(ell + 1, dtype=np.int64)
    np.cumsum(sizes, out=offsets[1:])
    n = int(offsets[-1])
    rows: list[np.ndarray] = []
    degs = np.zeros(n, dtype=np.int64)
    for i in range(ell):
        fi = factors[i]
        base = int(offsets[i])
        lower = [j for j in quotient.adjacency[i] if j < i]
        upper = [j for j in quotient.adjacency[i] if j > i]
        pre = [np.arange(offsets[j], offsets[j + 1], dtype=np.int32) for j in lower]
        post = [np.arange(offsets[j], offsets[j + 1], dtype=np.int32) for j in upper]
        pre_arr = np.concatenate(pre) if pre else np.empty(0, dtype=np.int32)
        post_arr = np.concatenate(post) if post else np.empty(0, dtype=np.int32)
        fip, fii = fi.csr()
        for v in range(fi.n):
            mid = fii[fip[v] : fip[v + 1]] + base
            row = np.concatenate([pre_arr, mid.astype(np.int32), post_arr])
            rows.append(row)
            degs[base + v] = len(row)
    indptr = np.zeros(n + 1, dtype=np.int32)
    np.cumsum(degs, out=indptr[1:])
    indices = (
        np.concatenate(rows).astype(np.int32) if rows else np.empty(0, dtype=np.int32)
    )
    return Graph.from_csr(n, indptr, indices)


def generate_substitution(recipe: SubstitutionRecipe) -> Graph:
    """Expand a recipe deterministically from its seed."""
    return _expand(recipe, random.Random(recipe.seed))


def recipe_from_json(obj) -> SubstitutionRecipe:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if "quotient" not in obj or "children" not in obj:
        raise PreconditionError("recipe needs 'quotient' and 'children'")
    children = obj["children"]
    if children == "leaves":
        children = ["leaf"]
    return SubstitutionRecipe(
        quotient=obj["quotient"],
        children=list(children) if isinstance(children, list) else [children],
        seed=int(obj.get("seed", 0)),
    )
