from rainbowlab.structure.absorbing import find_absorbing, verify_absorbing
from rainbowlab.structure.closeness import (
    ClosenessReport,
    bad_vertices,
    edge_type,
    edit_distance_to,
    min_closeness,
    type_counts,
    typed_completion,
)
from rainbowlab.structure.random_ops import (
    NibbleResult,
    SparsifierProfile,
    is_edge_cover,
    nibble_cover,
    sparsify,
)

__all__ = [
    "ClosenessReport",
    "NibbleResult",
    "SparsifierProfile",
    "bad_vertices",
    "edge_type",
    "edit_distance_to",
    "find_absorbing",
    "is_edge_cover",
    "min_closeness",
    "nibble_cover",
    "sparsify",
    "type_counts",
    "typed_completion",
    "verify_absorbing",
]
