"""Fast Ollivier-Ricci curvature lower bounds for graphs and hypergraphs.

The core primitive is a closed-form, single-pass upper bound on the
Wasserstein-1 distance between local random-walk measures on discrete
spaces with integer metrics; ``1 - bound`` is then a certified lower bound
on the curvature of the pair. On top of it sit hypergraph edge/node
curvature, an exact transport oracle and Sinkhorn baseline for validation,
synthetic generators, and a benchmark harness.
"""

from .bound import (
    BoundBreakdown,
    BoundError,
    kappa_lower_bound,
    lazy_kappa_bound,
    lazy_w1_bound,
    w1_simple_bound,
    w1_upper_bound,
)
from .curvature import (
    CurvatureReport,
    EdgeRecord,
    NodeRecord,
    PairwiseW1,
    agg_average,
    agg_max,
    compute_report,
    edge_curvature,
    node_curvature_edges,
    node_curvature_neighborhood,
)
from .generators import HcmSpec, HsbmSpec, generate_hcm, generate_hsbm
from .hypergraph import (
    AdjacencyIndex,
    Hypergraph,
    ParseError,
    build_adjacency,
    connected_components,
    graph_distance,
    parse_hyperedge_list,
    serialize_hyperedge_list,
)
from .measures import (
    LocalMeasure,
    MeasureError,
    delazify,
    graph_measure,
    lazify,
    measure_equal_edges,
    measure_equal_nodes,
    measure_weighted_edges,
)
from .spaces import GraphSpace, HammingSpace, L1LatticeSpace, graph_space, hamming_space, l1_lattice_space
from .transport import (
    TransportPlan,
    TransportProblem,
    build_problem,
    dual_witness_lower_bound,
    exact_w1,
    exact_w1_rational,
    optimal_witness,
    sinkhorn_w1,
)

__version__ = "0.1.0"
