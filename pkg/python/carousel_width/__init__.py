"""
carousel-width

Carousel graphs of unbounded rankwidth: GF(2) cut ranks, exact rankwidth for
small graphs, and constructive lower-bound certificates for large carousels.
"""

__version__ = "0.1.0"
__author__ = "carousel-width contributors"

from .carousel import (
    CarouselFlavor,
    CarouselGraph,
    CarouselSpec,
    PartRef,
    PolicyMode,
    SetRole,
    bar,
    build,
    closing_role_consistent,
    default_kinds,
    part_vertices,
    set_role,
    tail_fraction,
    tilde_part,
    validate_spec,
)
from .certify import (
    Block,
    RankWitness,
    block_witness,
    blocks,
    certify_partition,
    find_zero_label_part,
    label,
    label_budget,
    min_order,
    propagation_chain,
    propagation_check,
    sampled_certificate,
    unbalanced_by_labels,
    verify_witness,
    y_share_bound,
)
from .config import Caps
from .decomposition import (
    CertificateReport,
    TreeDecomposition,
    balanced_edge,
    certify_lower_bound,
    edge_width,
    rankwidth_exact,
    width,
)
from .errors import (
    CapExceededError,
    CarouselWidthError,
    ConfigurationError,
    FormatError,
    InvalidDecompositionError,
    InvalidPartitionError,
    InvalidSpecError,
    InvalidTripleError,
    ValidationError,
    WitnessError,
)
from .families import (
    RingPartition,
    build_ring,
    build_split_dilworth2,
    dilworth_number,
    is_even_hole_free,
    is_ring,
    is_split,
    ring_violations,
)
from .formats import GraphFormat, export_graph, import_graph
from .gf2 import (
    Gf2Matrix,
    PatternClass,
    classify_pattern,
    matches_pattern,
    pattern,
    pattern_rank_bound,
    rank,
    structured_square,
    triangular_core,
)
from .graph import (
    Bipartition,
    Graph,
    ImplicitGraph,
    MaterializedGraph,
    VertexRef,
    cut_matrix,
    is_balanced,
    materialize,
    partition_rank,
)
from .triples import TripleKind, triple_adjacent, triple_matrix, validate_kind

__all__ = [
    "Bipartition",
    "Block",
    "CapExceededError",
    "Caps",
    "CarouselFlavor",
    "CarouselGraph",
    "CarouselSpec",
    "CarouselWidthError",
    "CertificateReport",
    "ConfigurationError",
    "FormatError",
    "Gf2Matrix",
    "Graph",
    "GraphFormat",
    "ImplicitGraph",
    "InvalidDecompositionError",
    "InvalidPartitionError",
    "InvalidSpecError",
    "InvalidTripleError",
    "MaterializedGraph",
    "PartRef",
    "PatternClass",
    "PolicyMode",
    "RankWitness",
    "RingPartition",
    "SetRole",
    "TreeDecomposition",
    "TripleKind",
    "ValidationError",
    "VertexRef",
    "WitnessError",
    "balanced_edge",
    "bar",
    "block_witness",
    "blocks",
    "build",
    "build_ring",
    "build_split_dilworth2",
    "certify_lower_bound",
    "certify_partition",
    "classify_pattern",
    "closing_role_consistent",
    "cut_matrix",
    "default_kinds",
    "dilworth_number",
    "edge_width",
    "export_graph",
    "find_zero_label_part",
    "import_graph",
    "is_balanced",
    "is_even_hole_free",
    "is_ring",
    "is_split",
    "label",
    "label_budget",
    "matches_pattern",
    "materialize",
    "min_order",
    "part_vertices",
    "partition_rank",
    "pattern",
    "pattern_rank_bound",
    "propagation_chain",
    "propagation_check",
    "rank",
    "rankwidth_exact",
    "ring_violations",
    "sampled_certificate",
    "set_role",
    "tail_fraction",
    "tilde_part",
    "structured_square",
    "triangular_core",
    "triple_adjacent",
    "triple_matrix",
    "unbalanced_by_labels",
    "validate_kind",
    "validate_spec",
    "verify_witness",
    "width",
    "y_share_bound",
]
