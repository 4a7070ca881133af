from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import balanced_sets, has_perfect_matching_on
from rainbowlab import InputError, KPartiteHypergraph, Vertex
from rainbowlab.constructions import (
    W_AND_U_HITTING,
    ExtremalSpec,
    H13_spec,
    build_extremal,
    build_H13,
)
from rainbowlab.core import complete
from rainbowlab.fractional import FractionalAssignment, sparse_fpm
from rainbowlab.lab.generators import random_hypergraph
from rainbowlab.solvers import Matching
from rainbowlab.structure import (
    bad_vertices,
    edit_distance_to,
    find_absorbing,
    is_edge_cover,
    min_closeness,
    nibble_cover,
    sparsify,
    verify_absorbing,
)


# -- closeness -----------------------------------------------------------------

def test_edit_distance_examples():
    T = build_extremal(ExtremalSpec(3, 3, 3, (1, 1, 1), W_AND_U_HITTING))
    assert edit_distance_to(T, T).missing_edges == 0
    minus = T.with_edges(sorted(T.edges)[1:])
    assert edit_distance_to(minus, T).epsilon_achieved == Fraction(1, 27)
    assert edit_distance_to(KPartiteHypergraph([3, 3, 3]), T).epsilon_achieved == Fraction(18, 27)
    with pytest.raises(InputError):
        edit_distance_to(complete([2, 2, 2]), T)


def test_edit_distance_zero_iff_contained():
    T = build_extremal(ExtremalSpec(3, 3, 3, (1, 1, 1)))
    for seed in range(20):
        H = random_hypergraph([3, 3, 3], 0.8, seed=seed)
        assert (edit_distance_to(H, T).missing_edges == 0) == (T.edges <= H.edges)


def test_min_closeness_finds_shifted_placement():
    spec = ExtremalSpec(3, 3, 5, (2, 1, 2))
    H = build_extremal(spec, [{3, 4}, {5}, {1, 2}])
    report = min_closeness(H, spec)
    assert report.missing_edges == 0 and report.exact
    assert report.witness_W == ((3, 4), (5,), (1, 2))
    assert min_closeness(complete([5, 5, 5]), spec).missing_edges == 0


def test_min_closeness_lifted_spec():
    report = min_closeness(build_H13(3, prime=True), H13_spec(3, prime=True))
    assert report.missing_edges == 0 and report.normalizer == 81


@pytest.mark.parametrize("seed", range(10))
def test_local_search_never_beats_exhaustive(seed):
    spec = ExtremalSpec(3, 3, 3, (1, 1, 1), W_AND_U_HITTING)
    H = random_hypergraph([3, 3, 3], 0.6, seed=seed)
    exact = min_closeness(H, spec)
    local = min_closeness(H, spec, max_placements=0, seed=seed)
    assert exact.exact and not local.exact
    assert local.missing_edges >= exact.missing_edges


# -- bad vertices --------------------------------------------------------------

def test_bad_vertices_examples():
    T = build_extremal(ExtremalSpec(3, 3, 3, (1, 1, 1)))
    assert bad_vertices(T, T, 0) == set()
    empty = KPartiteHypergraph([3, 3, 3])
    assert bad_vertices(empty, T, 0) == set(T.vertices())
    v = Vertex(2, 3)
    H = T.with_edges(e for e in T.edges if v not in e)
    deg_v = sum(1 for e in T.edges if v in e)
    assert bad_vertices(H, T, Fraction(deg_v - 1, 9)) == {v}


def test_bad_vertices_antitone_in_alpha():
    T = build_extremal(ExtremalSpec(3, 3, 4, (1, 1, 1)))
    H = random_hypergraph([4, 4, 4], 0.5, seed=3)
    sets = [bad_vertices(H, T, Fraction(a, 16)) for a in range(0, 18)]
    for small, big in zip(sets[1:], sets):
        assert small <= big
    assert sets[-1] == set()  # alpha above the maximum degree over n^2


# -- absorbing -----------------------------------------------------------------

def test_verify_absorbing_examples():
    H = complete([3, 3, 3, 3])
    assert verify_absorbing(H, Matching(()), 0) == (True, None)
    M = Matching((H.sorted_edges()[0],))
    assert verify_absorbing(H, M, 4) == (True, None)
    lone = Vertex(1, 3)
    G = H.with_edges(e for e in H.edges if lone not in e)
    M2 = Matching(((Vertex(1, 1), Vertex(2, 1), Vertex(3, 1), Vertex(4, 1)),))
    ok, S = verify_absorbing(G, M2, 4)
    assert not ok and lone in S


def test_verify_absorbing_against_direct_enumeration():
    H = random_hypergraph([3, 3, 3, 3], 0.5, seed=8)
    for e in H.sorted_edges()[:6]:
        M = Matching((e,))
        free = [[v for v in H.class_vertices(c) if v not in e] for c in range(1, 5)]
        expected = all(has_perfect_matching_on(H.edges, set(S) | set(e))
                       for S in balanced_sets(free, 4, 4))
        assert verify_absorbing(H, M, 4)[0] == expected


def test_verify_absorbing_monotone_in_b():
    H = random_hypergraph([3, 3, 3, 3], 0.6, seed=1)
    M = Matching((H.sorted_edges()[0],))
    if verify_absorbing(H, M, 8)[0]:
        assert verify_absorbing(H, M, 4)[0]
    if not verify_absorbing(H, M, 4)[0]:
        assert not verify_absorbing(H, M, 8)[0]


def test_verify_absorbing_enumeration_limit():
    from rainbowlab import ResourceError
    with pytest.raises(ResourceError):
        verify_absorbing(complete([4, 4, 4, 4]), Matching(()), 8, limit=10)


def test_find_absorbing_examples():
    H = complete([3, 3, 3, 3])
    M = find_absorbing(H, 2, 4, seed=0)
    assert M is not None and verify_absorbing(H, M, 4)[0]
    assert find_absorbing(KPartiteHypergraph([3, 3, 3, 3]), 2, 4) is None
    assert find_absorbing(H, 2, 0) == Matching(())


# -- sparsify ------------------------------------------------------------------

def test_sparsify_integral_matchings_are_kept():
    H = complete([2, 2, 2])
    pm1 = [((1, 1), (2, 1), (3, 1)), ((1, 2), (2, 2), (3, 2))]
    pm2 = [((1, 1), (2, 2), (3, 1)), ((1, 2), (2, 1), (3, 2))]
    to_edges = lambda pm: [tuple(Vertex(*v) for v in e) for e in pm]
    fpms = [FractionalAssignment({e: 1 for e in to_edges(pm)}) for pm in (pm1, pm2)]
    F, profile = sparsify(H, fpms, seed=3)
    assert F.edges == set(to_edges(pm1) + to_edges(pm2))
    assert set(F.degrees()) == {2}
    assert len(sparsify(H, [], seed=3)[0]) == 0


def test_sparsify_rejects_overfull_probabilities():
    H = complete([2, 2, 2])
    e = H.sorted_edges()[0]
    with pytest.raises(InputError):
        sparsify(H, [FractionalAssignment({e: 1}), FractionalAssignment({e: Fraction(1, 2)})])


def test_sparsify_mean_degree():
    H = complete([4, 4, 4, 4])
    uniform = FractionalAssignment({e: Fraction(1, 64) for e in H.edges})
    means = [sparsify(H, [uniform], seed=s)[0].degrees().mean() for s in range(1000)]
    assert abs(np.mean(means) - 1) <= 0.1


def test_sparsify_reproducible():
    H = complete([3, 3, 3, 3])
    f = sparse_fpm(H)
    assert sparsify(H, [f], seed=7)[0] == sparsify(H, [f], seed=7)[0]


# -- nibble --------------------------------------------------------------------

def test_nibble_cover_size_band():
    H = complete([4, 4, 4, 4])
    sizes = [len(nibble_cover(H, seed=s).cover) for s in range(100)]
    assert sum(1 for x in sizes if x <= 1.5 * 4) >= 90


def test_nibble_perfect_matching_input():
    pm = [tuple(Vertex(c, i) for c in (1, 2, 3)) for i in (1, 2, 3)]
    H = KPartiteHypergraph([3, 3, 3], pm)
    res = nibble_cover(H, seed=5)
    assert sorted(res.cover) == sorted(pm) and sorted(res.matching.edges) == sorted(pm)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_nibble_cover_and_pruned_matching(seed):
    H = random_hypergraph([5, 5, 5], 0.3, seed=seed, min_degree=1)
    res = nibble_cover(H, seed=seed)
    assert is_edge_cover(H, res.cover)
    used = set()
    for e in res.matching:
        assert used.isdisjoint(e)
        used |= set(e)
    counts = {}
    for e in res.cover:
        for v in e:
            counts[v] = counts.get(v, 0) + 1
    overlapping = sum(1 for e in res.cover if any(counts[v] > 1 for v in e))
    assert len(res.matching) == len(res.cover) - overlapping
    assert len(res.matching) >= len(res.cover) - 2 * overlapping
    assert nibble_cover(H, seed=seed).cover == res.cover


def test_nibble_rejects_isolated_vertex():
    H = KPartiteHypergraph([2, 2], [((1, 1), (2, 1))], 2)
    with pytest.raises(InputError):
        nibble_cover(H)


# -- edge types ----------------------------------------------------------------

from rainbowlab.structure import edge_type, type_counts, typed_completion  # noqa: E402

W4 = ((4,), (4,), (4,), (4,))


def test_edge_type_examples():
    e = tuple(Vertex(c, 1) for c in (1, 2, 3)) + (Vertex(4, 4),)
    assert edge_type(e, W4) == "UUUW"
    assert edge_type(tuple(Vertex(c, 4) for c in (1, 2, 3, 4)), W4) == "WWWW"
    counts = type_counts(complete([2, 2, 2, 2]).edges, ((2,), (2,), (), ()))
    assert counts == {"UUUU": 4, "UUUW": 8, "UUWW": 4}


def test_typed_completion_on_complete_graph():
    H = complete([4] * 4)
    edges = [tuple(Vertex(c, p) for c in (1, 2, 3, 4)) for p in (1, 2, 3)]
    extra = [(c, 4) for c in (1, 2, 3, 4)]
    M = typed_completion(H, W4, edges, extra)
    assert M is not None and len(M) == 4
    assert {edge_type(e, W4) for e in M} == {"UUUW"}
    assert typed_completion(H, W4, edges, extra, pattern="UUWW") is None


@pytest.mark.parametrize("seed", range(8))
def test_typed_completion_matches_oracle(seed):
    H = random_hypergraph([4] * 4, 0.5, seed=seed)
    edges = [tuple(Vertex(c, p) for c in (1, 2, 3, 4)) for p in (1, 2, 3)]
    extra = [Vertex(c, 4) for c in (1, 2, 3, 4)]
    typed = [e for e in H.edges if edge_type(e, W4) == "UUUW"]
    expected = has_perfect_matching_on(typed, set(extra) | {v for e in edges for v in e})
    assert (typed_completion(H, W4, edges, extra) is not None) == expected


def test_typed_completion_rejects_overlap():
    H = complete([3] * 4)
    e = tuple(Vertex(c, 1) for c in (1, 2, 3, 4))
    with pytest.raises(InputError):
        typed_completion(H, ((3,),) * 4, [e], [(1, 1)])
