from rainbowlab.solvers.graphs import (
    TutteBergeCertificate,
    blossom_max_matching,
    brute_force_matching_size,
    graph_from_pairs,
    konig_min_cover,
    tutte_berge_certificate,
)
from rainbowlab.solvers.heuristic import greedy_rainbow_heuristic
from rainbowlab.solvers.hypergraph import (
    Matching,
    RainbowMatching,
    SearchBudgetExceeded,
    has_perfect_matching,
    max_matching,
    nu,
    perfect_matching_on,
    rainbow_matching,
    rainbow_via_lift,
)

__all__ = [
    "Matching",
    "RainbowMatching",
    "SearchBudgetExceeded",
    "TutteBergeCertificate",
    "blossom_max_matching",
    "brute_force_matching_size",
    "graph_from_pairs",
    "greedy_rainbow_heuristic",
    "has_perfect_matching",
    "konig_min_cover",
    "max_matching",
    "nu",
    "perfect_matching_on",
    "rainbow_matching",
    "rainbow_via_lift",
    "tutte_berge_certificate",
]
