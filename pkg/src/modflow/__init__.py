"""modflow: modular-decomposition based graph algorithms.

Seven classic polynomial problems (maximum matching, maximum b-matching,
triangle counting, edge-disjoint s-t paths, global edge min cut, maximum
s-t vertex-capacitated flow, global vertex min cut) solved through the
modular decomposition tree, with unparameterized baseline kernels for
validation and benchmarking.
"""

from ._backend import available_backends, backend_name, set_backend
from .graph import Graph, build_graph, induced_subgraph, read_graph, write_graph
from .matching import BMatchingResult, Matching, b_matching_max, blossom_max_matching
from .mdtree import (
    MDNode,
    MDTree,
    binarize_series,
    decompose,
    dump_md,
    is_module,
    lca,
    maximal_modular_partition,
    modular_width,
)
from .flow import (
    FlowNetwork,
    FlowResult,
    max_flow,
    min_cut_source_side,
    read_dimacs_flow,
    vertex_split,
    write_dimacs_flow,
)
from .mincut import stoer_wagner_mincut
from .mwmatching import (
    AuxBMatchingInstance,
    MatchStats,
    build_aux_instance,
    matching_witness,
    solve_bmatching_mw,
    solve_matching_mw,
)
from .mwtriangles import (
    TriangleStats,
    combine_parallel,
    combine_prime,
    combine_series_binary,
    count_triangles_mw,
    separated_triangles,
)
from .mwedgecut import (
    EdgeFlowKernel,
    build_edge_flow_kernel,
    edge_disjoint_st,
    emit_kernel,
    global_edge_mincut,
)
from .mwvertexcut import (
    global_vertex_mincut_mw,
    max_vertex_flow_mw,
    quotient_global_vertex_cut,
)
from .generate import (
    NAMED_QUOTIENTS,
    SubstitutionRecipe,
    compose,
    generate_substitution,
    random_prime_graph,
)
from .report import BenchRecord, SolveReport

__version__ = "0.1.0"
