from __future__ import annotations

import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import min_vertex_degree
from rainbowlab import (
    InputError,
    KPartiteHypergraph,
    Vertex,
    degree,
    is_balanced,
    is_stable,
    max_codegree,
    min_l_degree,
    neighborhood,
    remove_vertices,
)
from rainbowlab.constructions import ExtremalSpec, build_extremal
from rainbowlab.core import complete, induced, make_edge, parse_edge, pattern_degree


def H3(n, d=(1, 1, 1)):
    return build_extremal(ExtremalSpec(3, 3, n, d))


@st.composite
def hypergraphs(draw, max_k=4, max_n=3):
    k = draw(st.integers(2, max_k))
    sizes = draw(st.lists(st.integers(1, max_n), min_size=k, max_size=k))
    full = complete(sizes)
    edges = draw(st.sets(st.sampled_from(full.sorted_edges()), max_size=20))
    return full.with_edges(edges)


# -- types -------------------------------------------------------------------

def test_vertex_order_and_text():
    assert Vertex(1, 3) < Vertex(2, 1)
    assert str(Vertex(2, 5)) == "2:5"
    assert parse_edge("3:1 1:2") == (Vertex(1, 2), Vertex(3, 1))


def test_illegal_edge_rejected():
    with pytest.raises(InputError):
        make_edge([(1, 1), (1, 2)])
    with pytest.raises(InputError):
        KPartiteHypergraph([2, 2], [((1, 3), (2, 1))])
    with pytest.raises(InputError):
        KPartiteHypergraph([2, 0], [])


def test_edges_deduplicated():
    H = KPartiteHypergraph([2, 2], [((1, 1), (2, 1)), ((2, 1), (1, 1))])
    assert len(H) == 1


# -- degree ------------------------------------------------------------------

def test_degree_of_U_vertex_in_H3_10():
    H = H3(10)
    # independent count: partners (b, c) with b or c in W
    expected = sum(1 for b, c in itertools.product(range(1, 11), repeat=2) if b == 1 or c == 1)
    assert expected == 19
    assert degree(H, [Vertex(1, 5)]) == 19


def test_degree_empty_set_and_illegal_set():
    H = H3(3)
    assert degree(H, []) == len(H.edges)
    assert degree(H, [Vertex(1, 1), Vertex(1, 2)]) == 0


def test_degree_out_of_bounds():
    with pytest.raises(InputError):
        degree(H3(3), [Vertex(4, 1)])


def test_min_degree_examples():
    assert min_l_degree(H3(10), 1) == 19
    assert min_vertex_degree(H3(10)) == 19
    assert min_l_degree(complete([2, 2, 2]), 1) == 4
    assert min_l_degree(KPartiteHypergraph([2, 2, 2]), 1) == 0
    with pytest.raises(InputError):
        min_l_degree(H3(3), 3)


def test_neighborhood_examples():
    H = H3(3)
    assert neighborhood(H, [Vertex(1, 1)]) == {
        (Vertex(2, b), Vertex(3, c)) for b in range(1, 4) for c in range(1, 4)}
    e = (Vertex(1, 1), Vertex(2, 1))
    single = KPartiteHypergraph([1, 1], [e])
    assert neighborhood(single, e) == {()}
    assert neighborhood(single, [Vertex(1, 1), Vertex(2, 1)]) == {()}
    assert neighborhood(KPartiteHypergraph([2, 2], [e]), [Vertex(1, 2)]) == set()


def test_pattern_degree_counts_membership_patterns():
    H = complete([2, 2, 2, 2])
    U = {Vertex(3, 1), Vertex(4, 1)}
    rest = [v for v in H.vertices() if v not in U]
    # x in class 1, y in class 2; the third and fourth vertices must split between V-U and U
    got = pattern_degree(H, [Vertex(1, 1), Vertex(2, 1)], [rest, U])
    assert got == 2  # (3:2, 4:1) and (3:1, 4:2)


# -- removal, stability, codegree ----------------------------------------------

def test_remove_vertices_examples():
    H = complete([2, 2, 2])
    same, mapping = remove_vertices(H, [])
    assert same == H and all(k == v for k, v in mapping.items())
    smaller, _ = remove_vertices(H, [Vertex(3, 2)])
    assert len(smaller) == 4 and smaller.class_sizes == (2, 2, 1)
    W = [Vertex(c, 1) for c in (1, 2, 3)]
    assert len(remove_vertices(H3(3), W)[0]) == 0
    with pytest.raises(InputError):
        remove_vertices(H, [Vertex(1, 1), Vertex(1, 2)])


@settings(max_examples=60, deadline=None)
@given(hypergraphs(), st.data())
def test_remove_vertices_composes(H, data):
    vs = list(H.vertices())
    S1 = data.draw(st.sets(st.sampled_from(vs), max_size=3))
    S2 = data.draw(st.sets(st.sampled_from(vs), max_size=3)) - S1
    assume(all(sum(1 for v in S1 | S2 if v.cls == c) < size
               for c, size in enumerate(H.class_sizes, start=1)))
    once, _ = remove_vertices(H, S1 | S2)
    first, m1 = remove_vertices(H, S1)
    twice, _ = remove_vertices(first, [m1[v] for v in S2])
    assert once == twice


def test_is_stable_examples():
    assert is_stable(complete([2, 3, 2]))
    lone = KPartiteHypergraph([2, 2, 2], [((1, 2), (2, 1), (3, 1))])
    assert not is_stable(lone)
    assert is_stable(KPartiteHypergraph([2, 2, 2]))
    assert is_stable(H3(5, (2, 1, 1)))


def test_stability_survives_removing_top_vertex():
    H = H3(5, (2, 1, 1))
    for c in (1, 2, 3):
        assert is_stable(remove_vertices(H, [Vertex(c, 5)])[0])


def test_max_codegree_examples():
    assert max_codegree(complete([3, 3, 3])) == 3
    assert max_codegree(KPartiteHypergraph([2, 2, 2], [((1, 1), (2, 1), (3, 1))])) == 1
    assert max_codegree(KPartiteHypergraph([2, 2, 2])) == 0


def test_balanced_and_induced():
    H = complete([2, 2, 2])
    assert is_balanced(H, [Vertex(1, 1), Vertex(2, 2), Vertex(3, 1)])
    assert not is_balanced(H, [Vertex(1, 1), Vertex(2, 2)])
    assert is_balanced(H, [])
    sub, _ = induced(H, [Vertex(c, 1) for c in (1, 2, 3)])
    assert len(sub) == 1


@settings(max_examples=80, deadline=None)
@given(hypergraphs(), st.data())
def test_neighborhood_size_is_degree_and_degree_antitone(H, data):
    vs = list(H.vertices())
    T = data.draw(st.sets(st.sampled_from(vs), max_size=3))
    extra = data.draw(st.sampled_from(vs))
    legal = len({v.cls for v in T}) == len(T)
    if legal:
        assert len(neighborhood(H, T)) == degree(H, T)
    assert degree(H, T | {extra}) <= degree(H, T) or not legal
