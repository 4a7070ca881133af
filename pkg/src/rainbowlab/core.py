"""Data model for k-partite hypergraphs.

A vertex is a ``(class, position)`` pair, both 1-based.  An edge is a tuple of
vertices sorted by class, with at most one vertex per class.  Hypergraphs are
immutable once built; derived indices (incidence lists, bit masks) are cached
lazily.
"""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np


class InputError(ValueError):
    """Malformed or out-of-range input."""


class ResourceError(RuntimeError):
    """A configured size, time or enumeration budget was exceeded."""


class Vertex(NamedTuple):
    cls: int
    pos: int

    def __str__(self) -> str:
        return f"{self.cls}:{self.pos}"


Edge = tuple  # tuple[Vertex, ...], sorted by class


def make_edge(vertices: Iterable[Sequence[int]]) -> Edge:
    """Canonical edge from ``(class, position)`` pairs; rejects non-legal sets."""
    vs = sorted(Vertex(int(c), int(p)) for c, p in vertices)
    for a, b in zip(vs, vs[1:]):
        if a.cls == b.cls:
            raise InputError(f"edge {format_edge(vs)} has two vertices in class {a.cls}")
    return tuple(vs)


def format_edge(edge: Iterable[Vertex]) -> str:
    return " ".join(f"{v.cls}:{v.pos}" for v in edge)


def parse_edge(text: str) -> Edge:
    pairs = []
    for tok in text.split():
        c, _, p = tok.partition(":")
        if not p:
            raise InputError(f"bad vertex token {tok!r}")
        pairs.append((int(c), int(p)))
    return make_edge(pairs)


def is_legal(vertices: Iterable[Vertex]) -> bool:
    seen = set()
    for v in vertices:
        if v.cls in seen:
            return False
        seen.add(v.cls)
    return True


class KPartiteHypergraph:
    """k-partite l-uniform hypergraph with classes ``V_1..V_k``.

    ``class_sizes[i]`` is the size of class ``i + 1``.  ``l`` defaults to
    ``k``.  Every edge must be legal and have exactly ``l`` vertices.
    """

    __slots__ = ("class_sizes", "l", "edges", "_cache")

    def __init__(
        self,
        class_sizes: Sequence[int],
        edges: Iterable[Iterable] = (),
        l: int | None = None,
    ):
        sizes = tuple(int(s) for s in class_sizes)
        if not sizes:
            raise InputError("need at least one class")
        if any(s < 1 for s in sizes):
            raise InputError(f"every class needs at least one vertex, got {sizes}")
        self.class_sizes = sizes
        self.l = len(sizes) if l is None else int(l)
        if not 1 <= self.l <= len(sizes):
            raise InputError(f"uniformity {self.l} out of range for k={len(sizes)}")
        canon = set()
        for e in edges:
            e = _as_edge(e)
            if len(e) != self.l:
                raise InputError(f"edge {format_edge(e)} is not {self.l}-uniform")
            for v in e:
                self.check_vertex(v)
            canon.add(e)
        self.edges = frozenset(canon)
        self._cache = {}

    # -- shape -----------------------------------------------------------
    @property
    def k(self) -> int:
        return len(self.class_sizes)

    @property
    def n(self) -> int:
        """Largest class size (the common size for balanced hypergraphs)."""
        return max(self.class_sizes)

    @property
    def n_vertices(self) -> int:
        return sum(self.class_sizes)

    def check_vertex(self, v: Vertex) -> None:
        if not (1 <= v.cls <= self.k and 1 <= v.pos <= self.class_sizes[v.cls - 1]):
            raise InputError(f"vertex {v} out of bounds for classes {self.class_sizes}")

    def vertices(self) -> Iterator[Vertex]:
        for c, size in enumerate(self.class_sizes, start=1):
            for p in range(1, size + 1):
                yield Vertex(c, p)

    def class_vertices(self, c: int) -> list[Vertex]:
        return [Vertex(c, p) for p in range(1, self.class_sizes[c - 1] + 1)]

    def same_shape(self, other: "KPartiteHypergraph") -> bool:
        return self.class_sizes == other.class_sizes and self.l == other.l

    # -- dunder ----------------------------------------------------------
    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, edge) -> bool:
        return _as_edge(edge) in self.edges

    def __eq__(self, other) -> bool:
        if not isinstance(other, KPartiteHypergraph):
            return NotImplemented
        return self.same_shape(other) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.class_sizes, self.l, self.edges))

    def __repr__(self) -> str:
        return (f"KPartiteHypergraph(class_sizes={self.class_sizes}, l={self.l}, "
                f"|E|={len(self.edges)})")

    # -- cached indices --------------------------------------------------
    def sorted_edges(self) -> list[Edge]:
        if "sorted" not in self._cache:
            self._cache["sorted"] = sorted(self.edges)
        return self._cache["sorted"]

    def incidence(self) -> dict[Vertex, list[Edge]]:
        if "inc" not in self._cache:
            inc = {v: [] for v in self.vertices()}
            for e in self.sorted_edges():
                for v in e:
                    inc[v].append(e)
            self._cache["inc"] = inc
        return self._cache["inc"]

    def offsets(self) -> list[int]:
        if "off" not in self._cache:
            self._cache["off"] = [0, *itertools.accumulate(self.class_sizes)]
        return self._cache["off"]

    def index(self, v: Vertex) -> int:
        """Global 0-based index in (class, position) order."""
        return self.offsets()[v.cls - 1] + v.pos - 1

    def vertex_at(self, i: int) -> Vertex:
        off = self.offsets()
        for c in range(1, self.k + 1):
            if i < off[c]:
                return Vertex(c, i - off[c - 1] + 1)
        raise InputError(f"vertex index {i} out of range")

    def edge_array(self) -> np.ndarray:
        """``(|E|, l)`` int64 array of global vertex indices, rows in sorted-edge order."""
        if "arr" not in self._cache:
            arr = np.array([[self.index(v) for v in e] for e in self.sorted_edges()],
                           dtype=np.int64).reshape(len(self.edges), self.l)
            self._cache["arr"] = arr
        return self._cache["arr"]

    def edge_masks(self) -> np.ndarray:
        """One uint64 bit mask per sorted edge; requires at most 64 vertices."""
        if "masks" not in self._cache:
            if self.n_vertices > 64:
                raise ResourceError(
                    f"bit-mask kernels support at most 64 vertices, got {self.n_vertices}")
            arr = self.edge_array()
            masks = np.zeros(len(arr), dtype=np.uint64)
            for j in range(self.l):
                masks |= np.left_shift(np.uint64(1), arr[:, j].astype(np.uint64))
            self._cache["masks"] = masks
        return self._cache["masks"]

    def vertex_mask(self, vs: Iterable[Vertex]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self.index(v)
        return m

    def degrees(self) -> np.ndarray:
        """Vertex degrees indexed by global vertex index."""
        if "deg" not in self._cache:
            self._cache["deg"] = np.bincount(self.edge_array().ravel(),
                                             minlength=self.n_vertices)
        return self._cache["deg"]

    # -- builders ---------------------------------------------------------
    def with_edges(self, edges: Iterable) -> "KPartiteHypergraph":
        return KPartiteHypergraph(self.class_sizes, edges, self.l)

    def union(self, other: "KPartiteHypergraph") -> "KPartiteHypergraph":
        if not self.same_shape(other):
            raise InputError("union of hypergraphs with different shapes")
        return self.with_edges(self.edges | other.edges)


def _as_edge(e) -> Edge:
    if isinstance(e, tuple) and all(isinstance(v, Vertex) for v in e):
        if all(a.cls < b.cls for a, b in zip(e, e[1:])):
            return e
    return make_edge(e)


def _vertex_set(H: KPartiteHypergraph, T: Iterable) -> list[Vertex]:
    out = []
    for v in T:
        v = Vertex(*v)
        H.check_vertex(v)
        out.append(v)
    return out


def degree(H: KPartiteHypergraph, T: Iterable = ()) -> int:
    """Number of edges of ``H`` containing ``T``; 0 when ``T`` is not legal."""
    T = _vertex_set(H, T)
    if not T:
        return len(H.edges)
    if not is_legal(T) or len(set(T)) > H.l:
        return 0
    inc = H.incidence()
    pivot = min(T, key=lambda v: len(inc[v]))
    rest = set(T)
    return sum(1 for e in inc[pivot] if rest.issubset(e))


def neighborhood(H: KPartiteHypergraph, T: Iterable = ()) -> set[Edge]:
    """The link ``{e - T : T ⊆ e ∈ E(H)}``."""
    T = _vertex_set(H, T)
    if not is_legal(T):
        return set()
    tset = set(T)
    if not T:
        return set(H.edges)
    inc = H.incidence()
    pivot = min(T, key=lambda v: len(inc[v]))
    return {tuple(v for v in e if v not in tset) for e in inc[pivot] if tset.issubset(e)}


def pattern_degree(H: KPartiteHypergraph, T: Iterable, parts: Sequence[Iterable]) -> int:
    """Edges containing ``T`` whose other vertices fall one-each into ``parts``.

    With ``T = {x, y}`` and ``parts = (V - U, U)`` this is the count written
    ``d_H(x, y, V(H)-U, U)``: every remaining vertex is assigned to a distinct
    part, in some order.
    """
    part_sets = [set(Vertex(*v) for v in p) for p in parts]
    count = 0
    for rest in neighborhood(H, T):
        if len(rest) != len(part_sets):
            continue
        if any(all(v in s for v, s in zip(rest, perm))
               for perm in itertools.permutations(part_sets)):
            count += 1
    return count


def min_l_degree(H: KPartiteHypergraph, l: int = 1) -> int:
    """Minimum degree over legal ``l``-sets; ``l = 1`` is the minimum vertex degree."""
    if not 1 <= l < H.l:
        raise InputError(f"l={l} must satisfy 1 <= l < {H.l}")
    if l == 1:
        return int(H.degrees().min()) if H.n_vertices else 0
    counts = Counter()
    for e in H.edges:
        for T in itertools.combinations(e, l):
            counts[T] += 1
    best = None
    for classes in itertools.combinations(range(1, H.k + 1), l):
        for T in itertools.product(*(H.class_vertices(c) for c in classes)):
            d = counts.get(T, 0)
            if best is None or d < best:
                best = d
                if best == 0:
                    return 0
    return 0 if best is None else best


def max_codegree(H: KPartiteHypergraph) -> int:
    """Largest number of edges through a pair of vertices."""
    if H.l < 2:
        raise InputError("codegree needs uniformity >= 2")
    counts = Counter()
    for e in H.edges:
        counts.update(itertools.combinations(e, 2))
    return max(counts.values(), default=0)


def is_balanced(H: KPartiteHypergraph, S: Iterable) -> bool:
    """True when ``S`` meets every class in the same number of vertices."""
    per_class = Counter(Vertex(*v).cls for v in S)
    return len({per_class.get(c, 0) for c in range(1, H.k + 1)}) == 1


def remove_vertices(H: KPartiteHypergraph, S: Iterable) -> tuple[KPartiteHypergraph, dict]:
    """``H - S`` with positions re-indexed; returns the graph and the old->new map."""
    S = set(_vertex_set(H, S))
    mapping = {}
    sizes = []
    for c, size in enumerate(H.class_sizes, start=1):
        nxt = 0
        for p in range(1, size + 1):
            v = Vertex(c, p)
            if v not in S:
                nxt += 1
                mapping[v] = Vertex(c, nxt)
        if nxt == 0:
            raise InputError(f"removing these vertices empties class {c}")
        sizes.append(nxt)
    edges = [tuple(mapping[v] for v in e) for e in H.edges if not S.intersection(e)]
    return KPartiteHypergraph(sizes, edges, H.l), mapping


def induced(H: KPartiteHypergraph, S: Iterable) -> tuple[KPartiteHypergraph, dict]:
    """``H[S]``: the sub-hypergraph induced on ``S``, re-indexed like ``remove_vertices``."""
    keep = set(_vertex_set(H, S))
    return remove_vertices(H, [v for v in H.vertices() if v not in keep])


def is_stable(H: KPartiteHypergraph) -> bool:
    """Down-closure of the edge set under coordinatewise position order.

    Closure under single-step decrements implies closure under every dominated
    tuple, so only those are checked.
    """
    for e in H.edges:
        for i, v in enumerate(e):
            if v.pos > 1:
                lower = e[:i] + (Vertex(v.cls, v.pos - 1),) + e[i + 1:]
                if lower not in H.edges:
                    return False
    return True


def complete(class_sizes: Sequence[int], l: int | None = None) -> KPartiteHypergraph:
    """All legal ``l``-edges over the given classes."""
    k = len(class_sizes)
    l = k if l is None else l
    edges = []
    for classes in itertools.combinations(range(1, k + 1), l):
        pools = [[Vertex(c, p) for p in range(1, class_sizes[c - 1] + 1)] for c in classes]
        edges.extend(itertools.product(*pools))
    return KPartiteHypergraph(class_sizes, edges, l)
