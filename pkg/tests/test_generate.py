import random

import pytest

from oracles import random_graph

from modflow.errors import PreconditionError
from modflow.generate import (
    NAMED_QUOTIENTS,
    SubstitutionRecipe,
    compose,
    generate_substitution,
    random_prime_graph,
    recipe_from_json,
)
from modflow.graph import build_graph
from modflow.mdtree import decompose, is_module, modular_width


def test_k2_over_leaves():
    g = generate_substitution(SubstitutionRecipe("K2", ["leaf", "leaf"], seed=0))
    assert g == build_graph(2, [(0, 1)])


def test_p4_over_leaves(p4):
    g = generate_substitution(SubstitutionRecipe("P4", ["leaf"], seed=0))
    assert g == p4


def test_c5_over_triangles():
    g = generate_substitution(SubstitutionRecipe("C5", [{"clique": 3}], seed=0))
    assert g.n == 15
    t = decompose(g)
    root = t.nodes[t.root]
    assert root.kind == "prime" and len(root.children) == 5
    assert all(t.nodes[c].kind == "series" for c in root.children)


def test_recipe_modules_are_modules(rng):
    for _ in range(40):
        sizes = [rng.randint(1, 5) for _ in range(5)]
        g = generate_substitution(
            SubstitutionRecipe(
                "C5", [{"independent": s} for s in sizes], seed=rng.getrandbits(30)
            )
        )
        offset = 0
        for s in sizes:
            assert is_module(g, range(offset, offset + s))
            offset += s


def test_modular_width_bound(rng):
    for _ in range(30):
        arity = rng.choice([4, 5, 7])
        name = {4: "P4", 5: "C5", 7: "C7"}[arity]
        children = [
            {"clique": rng.randint(1, 4)} if rng.random() < 0.5 else {"independent": rng.randint(1, 4)}
            for _ in range(arity)
        ]
        g = generate_substitution(
            SubstitutionRecipe(name, children, seed=rng.getrandbits(30))
        )
        assert modular_width(decompose(g)) <= arity


def test_deterministic_by_seed():
    r = SubstitutionRecipe(
        {"random_prime": {"ell": 6, "p": 0.5}}, [{"random": {"n": 4, "p": 0.5}}], seed=7
    )
    assert generate_substitution(r) == generate_substitution(r)


def test_random_prime_graph():
    rng = random.Random(5)
    for ell in (4, 6, 10):
        q = random_prime_graph(ell, 0.5, rng)
        t = decompose(q)
        assert t.nodes[t.root].kind == "prime"
        assert len(t.nodes[t.root].children) == ell
    with pytest.raises(PreconditionError):
        random_prime_graph(3, 0.5, rng)


def test_named_templates_decompose_prime():
    for name in ("P4", "C5", "C7", "bull", "petersen"):
        n, edges = NAMED_QUOTIENTS[name]
        t = decompose(build_graph(n, edges))
        assert t.nodes[t.root].kind == "prime"
        assert len(t.nodes[t.root].children) == n


def test_compose_nested_recipe():
    inner = SubstitutionRecipe("P4", ["leaf"], seed=1)
    outer = SubstitutionRecipe("C5", [inner, "leaf", "leaf", "leaf", "leaf"], seed=2)
    g = generate_substitution(outer)
    assert g.n == 4 + 4
    assert is_module(g, range(4))
    assert modular_width(decompose(g)) == 5


def test_recipe_json_round_trip():
    obj = {
        "quotient": "P4",
        "children": ["leaf", {"clique": 2}, {"independent": 3}, "leaf"],
        "seed": 12,
    }
    r = recipe_from_json(obj)
    g = generate_substitution(r)
    assert g.n == 1 + 2 + 3 + 1
    assert recipe_from_json(obj).seed == 12
    with pytest.raises(PreconditionError):
        recipe_from_json({"children": []})


def test_malformed_specs_rejected():
    with pytest.raises(PreconditionError):
        generate_substitution(SubstitutionRecipe("NOPE", ["leaf"], seed=0))
    with pytest.raises(PreconditionError):
        generate_substitution(SubstitutionRecipe("P4", ["leaf", "leaf"], seed=0))
    with pytest.raises(PreconditionError):
        generate_substitution(SubstitutionRecipe("P4", ["bogus"], seed=0))


def test_compose_matches_naive(rng):
    for _ in range(30):
        q = random_graph(rng, rng.randint(2, 5), 0.6)
        factors = [random_graph(rng, rng.randint(1, 4), 0.5) for _ in range(q.n)]
        fast = compose(q, factors)
        # naive reference composition
        offsets = [0]
        for f in factors:
            offsets.append(offsets[-1] + f.n)
        edges = []
        for i, f in enumerate(factors):
            edges.extend((offsets[i] + u, offsets[i] + v) for u, v in f.edges())
        for a, b in q.edges():
            edges.extend(
                (offsets[a] + u, offsets[b] + v)
                for u in range(factors[a].n)
                for v in range(factors[b].n)
            )
        assert fast == build_graph(offsets[-1], edges)
