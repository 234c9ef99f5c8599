import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from modflow.generate import SubstitutionRecipe, generate_substitution
from modflow.graph import build_graph


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def composed_graph(rng, max_n=60):
    """Random substitution-composed graph with a nontrivial decomposition."""
    quotient = rng.choice(["P4", "C5", "bull", "C7"])
    arity = {"P4": 4, "C5": 5, "bull": 5, "C7": 7}[quotient]
    children = []
    for _ in range(arity):
        kind = rng.random()
        size = rng.randint(1, max(1, max_n // arity))
        if kind < 0.4:
            children.append({"independent": size})
        elif kind < 0.8:
            children.append({"clique": size})
        else:
            children.append({"random": {"n": size, "p": 0.5}})
    return generate_substitution(
        SubstitutionRecipe(quotient, children, seed=rng.getrandbits(32))
    )


def complete_graph(n):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def p4():
    return path_graph(4)


@pytest.fixture
def c5():
    return cycle_graph(5)
