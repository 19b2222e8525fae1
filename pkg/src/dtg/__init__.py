"""Certified recognition toolkit for double-threshold graphs."""

from ._backend import BACKEND
from .errors import ContractViolation, GraphParseError, InternalContradiction
from .graph import (
    Bipartition,
    Graph,
    bipartition,
    complement,
    components,
    encode_graph6,
    find_induced_pattern,
    induced_subgraph,
    is_clique,
    is_threshold,
    parse_edge_list,
    parse_graph6,
)
from .perm import (
    LinearOrder,
    Orientation,
    PermutationDiagram,
    bipartite_permutation_orderings,
    diagram_from_orderings,
    diagram_from_text,
    forced_partner_order,
    graph_from_diagram,
    neighborhood_equivalent,
    permutation_orderings,
    transitive_orientation,
    unit_slope_diagram,
)
from .core import (
    AuxGraph,
    CertificateCheck,
    NormalizationParams,
    RecognitionResult,
    StarPCG,
    WeightCertificate,
    auxiliary_graph,
    bipartite_weights,
    certificate_from_star,
    co_threshold_split,
    compose_disjoint,
    diagram_from_weights,
    efficient_max_clique,
    graph_from_weights,
    normalize_certificate,
    recognize,
    symmetric_orderings,
    to_star_pcg,
    verify_certificate,
    weights_from_symmetric,
)

__version__ = "0.1.0"
