"""Kernel backend selection.

The compiled extension ``modflow._kern_c`` is preferred when it imports;
otherwise the pure-Python twin ``modflow._kern_py`` is used. Set
``MODFLOW_BACKEND=pure`` (or call :func:`set_backend`) to force the fallback,
e.g. for the implementation-comparison benchmark.
"""

from __future__ import annotations

import os

from . import _kern_py

try:
    from . import _kern_c
except ImportError:  # extension not built
    _kern_c = None

_active = _kern_py
if _kern_c is not None and os.environ.get("MODFLOW_BACKEND", "").lower() != "pure":
    _active = _kern_c


def available_backends() -> list[str]:
    return ["native", "pure"] if _kern_c is not None else ["pure"]


def backend_name() -> str:
    return "native" if _active is _kern_c else "pure"


def set_backend(name: str) -> None:
    global _active
    if name == "pure":
        _active = _kern_py
    elif name == "native":
        if _kern_c is None:
            raise RuntimeError("compiled kernels are not available")
        _active = _kern_c
    else:
        raise ValueError(f"unknown backend {name!r}")


def components_raw(n, indptr, indices):
    return _active.components(n, indptr, indices)


def co_components_raw(n, indptr, indices):
    return _active.co_components(n, indptr, indices)


def refine_modular_raw(n, indptr, indices, part_of):
    return _active.refine_modular(n, indptr, indices, part_of)


def module_closure_raw(n, indptr, indices, seed):
    return _active.module_closure(n, indptr, indices, seed)


def components(g):
    return components_raw(g.n, *g.csr())


def co_components(g):
    return co_components_raw(g.n, *g.csr())


def blossom_csr(n, indptr, indices):
    return _active.blossom(n, indptr, indices)


def blossom_graph(g):
    return blossom_csr(g.n, *g.csr())


def dinic(num_nodes, tails, heads, caps, source, sink, want_flows=True):
    return _active.dinic(num_nodes, tails, heads, caps, source, sink, want_flows)


def triangle_count(g):
    indptr, indices = g.csr()
    return _active.triangle_count(g.n, indptr, indices)


def bmatch_dual(adj_masks, b):
    return _active.bmatch_dual(adj_masks, b)
