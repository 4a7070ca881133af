from rainbowlab.fractional.decompose import DecompositionReport, edge_disjoint_fpm
from rainbowlab.fractional.lp import (
    FractionalAssignment,
    FractionalCover,
    closure,
    complementary_slackness,
    matching_and_cover,
    mu_f,
    nu_f,
    pair_loads,
    sort_cover_monotone,
    sparse_fpm,
)
from rainbowlab.fractional.rainbow import HypothesisWarning, RainbowFractionalPM, rainbow_fpm
from rainbowlab.fractional.simplex import LPResult, solve_packing

__all__ = [
    "DecompositionReport",
    "FractionalAssignment",
    "FractionalCover",
    "HypothesisWarning",
    "LPResult",
    "RainbowFractionalPM",
    "closure",
    "complementary_slackness",
    "edge_disjoint_fpm",
    "matching_and_cover",
    "mu_f",
    "nu_f",
    "pair_loads",
    "rainbow_fpm",
    "solve_packing",
    "sort_cover_monotone",
    "sparse_fpm",
]
