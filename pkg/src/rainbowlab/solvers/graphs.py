"""Matching algorithms for ordinary graphs (2-uniform hypergraphs).

A general simple graph on ``n`` vertices is represented as an ``n``-partite
2-graph with singleton classes, see :func:`graph_from_pairs`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from rainbowlab import _kernels as K
from rainbowlab.core import InputError, KPartiteHypergraph, ResourceError, Vertex
from rainbowlab.solvers.hypergraph import Matching

EXHAUSTIVE_LIMIT = 20


def graph_from_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> KPartiteHypergraph:
    """Simple graph on vertices ``0..n-1`` as a 2-graph with singleton classes."""
    edges = []
    for a, b in pairs:
        if a == b:
            raise InputError(f"loop at vertex {a}")
        edges.append(((a + 1, 1), (b + 1, 1)))
    return KPartiteHypergraph([1] * n, edges, 2)


def _index_graph(G: KPartiteHypergraph) -> tuple[int, list[tuple[int, int]]]:
    if G.l != 2:
        raise InputError(f"expected a 2-graph, got uniformity {G.l}")
    return G.n_vertices, [(G.index(a), G.index(b)) for a, b in G.sorted_edges()]


def _adjacency(n: int, pairs) -> list[list[int]]:
    adj = [[] for _ in range(n)]
    for a, b in pairs:
        adj[a].append(b)
        adj[b].append(a)
    for nb in adj:
        nb.sort()
    return adj


def blossom_pairs(n: int, pairs: Sequence[tuple[int, int]]) -> list[int]:
    """Edmonds' blossom algorithm; returns ``mate`` with -1 for exposed vertices."""
    adj = _adjacency(n, pairs)
    mate = [-1] * n
    for a, b in pairs:  # greedy start
        if mate[a] < 0 and mate[b] < 0:
            mate[a], mate[b] = b, a

    def lca(a, b, base, parent):
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] < 0:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v, b, child, base, parent, in_blossom):
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def find_path(root):
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] >= 0 and parent[mate[to]] >= 0):
                    cur = lca(v, to, base, parent)
                    in_blossom = [False] * n
                    mark_path(v, cur, to, base, parent, in_blossom)
                    mark_path(to, cur, v, base, parent, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif parent[to] < 0:
                    parent[to] = v
                    if mate[to] < 0:
                        return to, parent
                    used[mate[to]] = True
                    q.append(mate[to])
        return -1, parent

    for root in range(n):
        if mate[root] >= 0:
            continue
        end, parent = find_path(root)
        while end >= 0:
            pv = parent[end]
            nxt = mate[pv]
            mate[end], mate[pv] = pv, end
            end = nxt
    return mate


def blossom_max_matching(G: KPartiteHypergraph) -> tuple[int, Matching]:
    """Maximum matching of a 2-graph (odd cycles allowed)."""
    n, pairs = _index_graph(G)
    mate = blossom_pairs(n, pairs)
    edges = []
    for a in range(n):
        b = mate[a]
        if b > a:
            edges.append(tuple(sorted((G.vertex_at(a), G.vertex_at(b)))))
    return len(edges), Matching(tuple(edges))


def _adj_masks(n: int, pairs) -> list[int]:
    adj = [0] * n
    for a, b in pairs:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def brute_force_matching_size(G: KPartiteHypergraph) -> int:
    """Matching number by dynamic programming over vertex subsets (at most 20 vertices)."""
    n, pairs = _index_graph(G)
    return brute_force_pairs(n, pairs)


def brute_force_pairs(n: int, pairs) -> int:
    if n > EXHAUSTIVE_LIMIT:
        raise ResourceError(f"subset DP limited to {EXHAUSTIVE_LIMIT} vertices")
    if n == 0:
        return 0
    dp = K.buf(1 << n)
    return int(K.graph_matching_dp(K.arr(_adj_masks(n, pairs)), n, dp))


@dataclass(frozen=True)
class TutteBergeCertificate:
    S: frozenset
    odd_components: int
    deficiency: int

    def matching_number(self, n_vertices: int) -> int:
        return (n_vertices - self.deficiency) // 2


def odd_component_count(n: int, pairs, removed: Iterable[int]) -> int:
    alive = (1 << n) - 1
    for v in removed:
        alive &= ~(1 << v)
    return int(K.odd_components(K.arr(_adj_masks(n, pairs) or [0]), n, alive))


def tutte_berge_pairs(n: int, pairs) -> tuple[list[int], int, int]:
    """``(S, odd components of G - S, deficiency)`` with maximum deficiency."""
    if n == 0:
        return [], 0, 0
    if n <= EXHAUSTIVE_LIMIT:
        out = K.buf(3)
        K.tutte_berge_exhaustive(K.arr(_adj_masks(n, pairs)), n, out)
        s = int(out[0])
        return [v for v in range(n) if s >> v & 1], int(out[1]), int(out[2])
    # Edmonds-Gallai: D = vertices missed by some maximum matching, S = N(D) - D.
    size = sum(1 for v, m in enumerate(blossom_pairs(n, pairs)) if m > v)
    D = set()
    for v in range(n):
        rest = [(a, b) for a, b in pairs if v not in (a, b)]
        sub = sum(1 for a, m in enumerate(blossom_pairs(n, rest)) if m > a)
        if sub == size:
            D.add(v)
    adj = _adjacency(n, pairs)
    S = sorted({w for v in D for w in adj[v]} - D)
    odd = odd_component_count(n, pairs, S)
    return S, odd, odd - len(S)


def tutte_berge_certificate(G: KPartiteHypergraph) -> TutteBergeCertificate:
    """Deficiency-maximizing set; checked against the blossom matching number."""
    n, pairs = _index_graph(G)
    S, odd, dfc = tutte_berge_pairs(n, pairs)
    size = sum(1 for v, m in enumerate(blossom_pairs(n, pairs)) if m > v)
    if (n - dfc) != 2 * size:
        raise AssertionError(f"Tutte-Berge mismatch: |V|={n}, deficiency={dfc}, nu={size}")
    return TutteBergeCertificate(frozenset(G.vertex_at(v) for v in S), odd, dfc)


def _sides(G: KPartiteHypergraph, sides):
    if sides is None:
        pairs = {(a.cls, b.cls) for a, b in G.edges}
        if G.k == 2:
            sides = (1, 2)
        elif len(pairs) == 1:
            sides = next(iter(pairs))
        elif not pairs:
            sides = (1, 2) if G.k >= 2 else (1, 1)
        else:
            raise InputError("graph spans several class pairs; pass sides explicitly")
    a, b = sides
    if a == b:
        raise InputError("the two sides of a bipartite graph must be different classes")
    for e in G.edges:
        if {e[0].cls, e[1].cls} != {a, b}:
            raise InputError(f"edge {e} is not between classes {a} and {b}")
    return a, b


def konig_min_cover(G: KPartiteHypergraph, sides: tuple[int, int] | None = None) -> frozenset:
    """Minimum vertex cover of a bipartite 2-graph via König's construction."""
    if G.l != 2:
        raise InputError("König cover needs a 2-graph")
    a, b = _sides(G, sides)
    left = G.class_vertices(a)
    adj = {v: [] for v in left}
    for e in G.sorted_edges():
        x, y = (e[0], e[1]) if e[0].cls == a else (e[1], e[0])
        adj[x].append(y)
    match_r: dict[Vertex, Vertex] = {}
    match_l: dict[Vertex, Vertex] = {}

    def augment(x, seen):
        for y in adj[x]:
            if y in seen:
                continue
            seen.add(y)
            if y not in match_r or augment(match_r[y], seen):
                match_r[y] = x
                match_l[x] = y
                return True
        return False

    for x in left:
        augment(x, set())
    # Z: vertices reachable from exposed left vertices along alternating paths
    Z = set()
    stack = [x for x in left if x not in match_l]
    Z.update(stack)
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in Z:
                Z.add(y)
                x2 = match_r.get(y)
                if x2 is not None and x2 not in Z:
                    Z.add(x2)
                    stack.append(x2)
    cover = frozenset([x for x in left if x not in Z] + [y for y in Z if y.cls == b])
    if len(cover) != len(match_l):
        raise AssertionError("König equality violated")
    return cover


def is_vertex_cover(G: KPartiteHypergraph, cover) -> bool:
    cover = set(cover)
    return all(cover.intersection(e) for e in G.edges)
