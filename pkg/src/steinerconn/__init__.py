"""Generalized k-(edge-)connectivity toolkit.

Exact Steiner-tree-packing search over small graphs, line/total graph
transforms, closed-form evaluators for the covered families, and explicit
verifiable tree-packing certificates for total graphs of trees, complete
graphs, and complete bipartite graphs.
"""

from .errors import BudgetExceededError, ConstructionError, InputError, NotCoveredError
from .graphs import (
    FamilySpec,
    Graph,
    build_graph,
    degree_profile,
    edge_connectivity,
    format_edge_list,
    generate_family,
    induced_subgraph,
    is_connected,
    parse_edge_list,
    parse_family_spec,
    vertex_connectivity,
)
from .packing import (
    ConnectivityResult,
    SearchBudget,
    TreePacking,
    VerificationReport,
    generalized_connectivity,
    local_connectivity,
    packing_from_json_dict,
    packing_to_json_dict,
    verify_packing,
)
from .transforms import (
    LabeledGraph,
    cartesian_product,
    corresponding_tree,
    edge_vertex,
    label_name,
    line_graph,
    original,
    parse_label_name,
    total_graph,
)

__version__ = "0.1.0"
