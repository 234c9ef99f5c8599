"""Global minimum edge cut of a weighted undirected graph (Stoer-Wagner)."""

from __future__ import annotations

import numpy as np

from . import _backend as kern
from .errors import PreconditionError
from .graph import Graph

__all__ = ["stoer_wagner_mincut"]


def stoer_wagner_mincut(g: Graph, weights=None):
    """Minimum total weight of edges crossing any nontrivial bipartition.

    ``weights`` maps sorted vertex pairs to non-negative weights (unit when
    omitted or when a pair is missing). Returns (value, side) where side is
    one block of an optimal bipartition. A disconnected graph yields value 0
    with one component as the side.
    """
    n = g.n
    if n < 2:
        raise PreconditionError("stoer_wagner_mincut requires n >= 2")
    labels = kern.components(g)
    if max(labels) > 0:
        side = {v for v in range(n) if labels[v] == 0}
        return 0, side
    integral = weights is None or all(
        isinstance(x, (int, np.integer)) for x in weights.values()
    )
    w = np.zeros((n, n), dtype=np.float64)
    for u, v in g.edges():
        val = 1 if weights is None else weights.get((u, v), 1)
        if val < 0:
            raise PreconditionError(f"negative weight on edge ({u}, {v})")
        w[u, v] = val
        w[v, u] = val

    groups: list[list[int]] = [[v] for v in range(n)]
    active = list(range(n))
    best_value = None
    best_side = None
    while len(active) > 1:
        act = np.array(active)
        sub = w[np.ix_(act, act)]
        k = len(active)
        # maximum adjacency order; ties resolve to the smallest id since
        # argmax returns the first maximum and `active` stays sorted
        weight_to_a = sub[0].copy()
        weight_to_a[0] = -np.inf
        order = [0]
        cut_of_phase = 0.0
        for _ in range(k - 1):
            i = int(np.argmax(weight_to_a))
            cut_of_phase = float(weight_to_a[i])
            order.append(i)
            weight_to_a += sub[i]
            weight_to_a[i] = -np.inf
        last = int(act[order[-1]])
        before = int(act[order[-2]])
        if best_value is None or cut_of_phase < best_value:
            best_value = cut_of_phase
            best_side = list(groups[last])
        w[before, :] += w[last, :]
        w[:, before] += w[:, last]
        w[before, before] = 0.0
        groups[before].extend(groups[last])
        active.remove(last)
    best_value = int(round(best_value)) if integral else float(best_value)
    return best_value, set(best_side)
