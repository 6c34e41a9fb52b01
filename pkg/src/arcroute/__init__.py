"""Shortest-path strict 2-interval routing schemes for circular-arc graphs.

Build a scheme from an arc model with ``build_scheme``, check it with the
independent ``verify_scheme`` / ``route`` oracles, and probe small graphs
for 1-interval schemes with ``has_shortest_path_1irs``.
"""

from .arc_model import (
    ArcModel,
    Graph,
    all_pairs_distances,
    bfs_distances,
    dominating_vertices,
    first_vertices,
    intersection_graph,
    is_real,
    parse_model,
    validate_model,
)
from .builder import (
    RoutingScheme,
    VertexFrame,
    VertexOrder,
    apex_number,
    build_scheme,
    build_vertex_order,
    compute_frame,
    label_face_to_face,
    label_left,
    label_right,
    right_vertex,
    separator,
)
from .clique_cycle import (
    CliqueCycle,
    build_clique_cycle,
    counter_vertices,
    reaches_further_left,
    reaches_further_right,
)
from .errors import (
    ArcRouteError,
    ConstructionError,
    ModelFormatError,
    NotRealCircularArc,
    StructuralSchemeError,
)
from .generator import gen_complete, gen_random, gen_ring, gen_wheel
from .oracle import OracleResult, has_shortest_path_1irs
from .ring_order import (
    CyclicOrder,
    RingInterval,
    interval_contains,
    interval_members,
    join,
    ring_sequence,
    successor,
)
from .verifier import (
    IntervalStats,
    VerificationReport,
    interval_stats,
    route,
    verify_scheme,
)

__version__ = "0.1.0"

__all__ = [
    "ArcModel",
    "ArcRouteError",
    "CliqueCycle",
    "ConstructionError",
    "CyclicOrder",
    "Graph",
    "IntervalStats",
    "ModelFormatError",
    "NotRealCircularArc",
    "OracleResult",
    "RingInterval",
    "RoutingScheme",
    "StructuralSchemeError",
    "VerificationReport",
    "VertexFrame",
    "VertexOrder",
    "all_pairs_distances",
    "apex_number",
    "bfs_distances",
    "build_clique_cycle",
    "build_scheme",
    "build_vertex_order",
    "compute_frame",
    "counter_vertices",
    "dominating_vertices",
    "first_vertices",
    "gen_complete",
    "gen_random",
    "gen_ring",
    "gen_wheel",
    "has_shortest_path_1irs",
    "interval_contains",
    "interval_members",
    "interval_stats",
    "intersection_graph",
    "is_real",
    "join",
    "label_face_to_face",
    "label_left",
    "label_right",
    "parse_model",
    "reaches_further_left",
    "reaches_further_right",
    "right_vertex",
    "ring_sequence",
    "route",
    "separator",
    "successor",
    "validate_model",
    "verify_scheme",
]
