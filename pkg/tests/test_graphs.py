from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import graph_matching_number
from rainbowlab import InputError, KPartiteHypergraph, Vertex
from rainbowlab.core import complete
from rainbowlab.solvers import (
    blossom_max_matching,
    brute_force_matching_size,
    graph_from_pairs,
    konig_min_cover,
    tutte_berge_certificate,
)
from rainbowlab.solvers.graphs import is_vertex_cover, tutte_berge_pairs
from rainbowlab.verify import check_matching


def test_blossom_examples():
    assert blossom_max_matching(graph_from_pairs(3, [(0, 1), (1, 2), (0, 2)]))[0] == 1
    c5 = graph_from_pairs(5, [(i, (i + 1) % 5) for i in range(5)])
    assert blossom_max_matching(c5)[0] == 2
    K222 = complete([2, 2, 2], l=2)
    size, M = blossom_max_matching(K222)
    assert size == 3 == graph_matching_number(6, [(K222.index(a), K222.index(b)) for a, b in K222.edges])
    assert not check_matching(K222, M)


def test_brute_force_limit():
    from rainbowlab import ResourceError
    with pytest.raises(ResourceError):
        brute_force_matching_size(graph_from_pairs(21, []))


pairs_strategy = st.integers(2, 12).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                        .filter(lambda p: p[0] < p[1]), max_size=25)))


@settings(max_examples=150, deadline=None)
@given(pairs_strategy)
def test_blossom_matches_brute_force(data):
    n, pairs = data
    G = graph_from_pairs(n, pairs)
    size, M = blossom_max_matching(G)
    assert size == brute_force_matching_size(G) == graph_matching_number(n, pairs)
    assert not check_matching(G, M)


def test_tutte_berge_examples():
    star = graph_from_pairs(4, [(0, 1), (0, 2), (0, 3)])
    cert = tutte_berge_certificate(star)
    assert cert.S == frozenset({Vertex(1, 1)}) and cert.deficiency == 2
    assert cert.matching_number(4) == 1
    path = graph_from_pairs(4, [(0, 1), (1, 2), (2, 3)])
    assert tutte_berge_certificate(path).deficiency == 0
    tri_plus = graph_from_pairs(4, [(0, 1), (1, 2), (0, 2)])
    cert = tutte_berge_certificate(tri_plus)
    assert cert.deficiency == 2 and cert.odd_components - len(cert.S) == 2


@settings(max_examples=100, deadline=None)
@given(pairs_strategy.filter(lambda d: d[0] <= 10))
def test_tutte_berge_formula(data):
    n, pairs = data
    S, odd, dfc = tutte_berge_pairs(n, pairs)
    assert dfc == odd - len(S)
    assert (n - dfc) // 2 == graph_matching_number(n, pairs)


def test_edmonds_gallai_route_beyond_exhaustive_limit():
    n = 23
    pairs = [(i, i + 1) for i in range(0, 22, 2)] + [(0, 22), (1, 22)]
    S, odd, dfc = tutte_berge_pairs(n, pairs)
    assert (n - dfc) // 2 == 11


def test_konig_examples():
    path = KPartiteHypergraph([2, 1], [((1, 1), (2, 1)), ((1, 2), (2, 1))])
    assert konig_min_cover(path) == frozenset({Vertex(2, 1)})
    pm = KPartiteHypergraph([3, 3], [((1, i), (2, i)) for i in (1, 2, 3)])
    assert len(konig_min_cover(pm)) == 3
    assert konig_min_cover(KPartiteHypergraph([2, 2], [], 2)) == frozenset()
    with pytest.raises(InputError):
        konig_min_cover(complete([2, 2, 2], l=2))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_konig_equals_matching(a, b, data):
    full = complete([a, b], l=2)
    edges = data.draw(st.sets(st.sampled_from(full.sorted_edges())))
    G = full.with_edges(edges)
    cover = konig_min_cover(G)
    assert is_vertex_cover(G, cover)
    assert len(cover) == blossom_max_matching(G)[0]
