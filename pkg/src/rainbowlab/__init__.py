"""Desk-scale toolkit for rainbow matchings in k-partite hypergraphs."""

from rainbowlab.core import (
    Edge,
    InputError,
    KPartiteHypergraph,
    ResourceError,
    Vertex,
    degree,
    is_balanced,
    is_stable,
    max_codegree,
    min_l_degree,
    neighborhood,
    remove_vertices,
)

__version__ = "0.1.0"

__all__ = [
    "Edge",
    "InputError",
    "KPartiteHypergraph",
    "ResourceError",
    "Vertex",
    "degree",
    "is_balanced",
    "is_stable",
    "max_codegree",
    "min_l_degree",
    "neighborhood",
    "remove_vertices",
]
