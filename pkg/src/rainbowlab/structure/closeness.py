"""Distance to extremal constructions and alpha-bad vertices.

A hypergraph is eps-close to a target when at most ``eps * n^l`` target
edges are missing from it; a vertex is alpha-good when at most
``alpha * n^(l-1)`` of its target edges are missing.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from rainbowlab.constructions import W_AND_U_HITTING, ExtremalSpec
from rainbowlab.core import InputError, KPartiteHypergraph, Vertex, complete

EXHAUSTIVE_CLASS_LIMIT = 12
MAX_PLACEMENTS = 50_000


@dataclass(frozen=True)
class ClosenessReport:
    missing_edges: int
    normalizer: int
    witness_W: tuple | None = None  # per class, sorted W positions
    exact: bool = True  # False: local search, so only an upper bound

    @property
    def epsilon_achieved(self) -> Fraction:
        return Fraction(self.missing_edges, self.normalizer)

    def as_dict(self) -> dict:
        eps = self.epsilon_achieved
        return {
            "missing_edges": self.missing_edges,
            "normalizer": self.normalizer,
            "epsilon_achieved": f"{eps.numerator}/{eps.denominator}",
            "witness_W": None if self.witness_W is None else [list(w) for w in self.witness_W],
            "exact": self.exact,
        }


def _check_shape(H: KPartiteHypergraph, target: KPartiteHypergraph) -> None:
    if not H.same_shape(target):
        raise InputError(f"shape mismatch: {H.class_sizes}/{H.l} vs {target.class_sizes}/{target.l}")


def edit_distance_to(H: KPartiteHypergraph, target: KPartiteHypergraph) -> ClosenessReport:
    """Labeled count of target edges absent from ``H``, over ``n^l``."""
    _check_shape(H, target)
    return ClosenessReport(len(target.edges - H.edges), H.n ** H.l)


class _PlacementScorer:
    """Counts, for a W placement, the target edges outside ``H``.

    Only the complement of ``H`` matters, so it is tabulated once and each
    placement costs one vectorized pass over it.
    """

    def __init__(self, H: KPartiteHypergraph, spec: ExtremalSpec):
        if tuple(H.class_sizes) != spec.class_sizes or H.l != spec.l:
            raise InputError(f"spec shape {spec.class_sizes}/{spec.l} does not match "
                             f"{H.class_sizes}/{H.l}")
        self.spec = spec
        full = complete(spec.class_sizes, spec.l)
        missing = [e for e in full.edges if e not in H.edges]
        if spec.lifted:
            missing = [e for e in missing if e[0].cls == 1]
        self.cls = np.array([[v.cls - 1 for v in e] for e in missing], dtype=np.int64).reshape(-1, spec.l)
        self.pos = np.array([[v.pos - 1 for v in e] for e in missing], dtype=np.int64).reshape(-1, spec.l)
        self.active = self.cls >= (1 if spec.lifted else 0)

    def score(self, placement) -> int:
        if len(self.cls) == 0:
            return 0
        inw = np.zeros((self.spec.k, self.spec.n), dtype=bool)
        for c, w in enumerate(placement):
            for p in w:
                inw[c, p - 1] = True
        hit = inw[self.cls, self.pos]
        hit_w = (hit & self.active).any(axis=1)
        if self.spec.variant == W_AND_U_HITTING:
            hit_w &= (~hit & self.active).any(axis=1)
        return int(hit_w.sum())


def _placement_count(spec: ExtremalSpec) -> int:
    return math.prod(math.comb(spec.n, d) for d in spec.d)


def _local_search(scorer: _PlacementScorer, spec: ExtremalSpec, seed: int, restarts: int):
    rng = np.random.default_rng(seed)
    starts = [spec.canonical_placement()]
    for _ in range(restarts):
        starts.append(tuple(frozenset(int(x) + 1 for x in rng.choice(spec.n, size=d, replace=False))
                            for d in spec.d))
    best = None
    for start in starts:
        cur = [set(w) for w in start]
        cur_score = scorer.score(cur)
        improved = True
        while improved:
            improved = False
            for c in range(spec.k):
                outside = [p for p in range(1, spec.n + 1) if p not in cur[c]]
                for a, b in itertools.product(sorted(cur[c]), outside):
                    cur[c].discard(a)
                    cur[c].add(b)
                    s = scorer.score(cur)
                    if s < cur_score:
                        cur_score = s
                        improved = True
                        break
                    cur[c].discard(b)
                    cur[c].add(a)
                if improved:
                    break
        if best is None or cur_score < best[0]:
            best = (cur_score, tuple(tuple(sorted(w)) for w in cur))
    return best


def min_closeness(H: KPartiteHypergraph, spec: ExtremalSpec, seed: int = 0,
                  max_placements: int = MAX_PLACEMENTS, restarts: int = 8) -> ClosenessReport:
    """Smallest distance from ``H`` to the construction over all W placements.

    Placements are enumerated exhaustively when classes have at most 12
    vertices and there are at most ``max_placements`` of them; otherwise a
    swap local search runs and the report is flagged as an upper bound.
    """
    scorer = _PlacementScorer(H, spec)
    norm = spec.n ** spec.l
    if spec.n <= EXHAUSTIVE_CLASS_LIMIT and _placement_count(spec) <= max_placements:
        best = None
        pools = [itertools.combinations(range(1, spec.n + 1), d) for d in spec.d]
        for placement in itertools.product(*pools):
            s = scorer.score(placement)
            if best is None or s < best[0]:
                best = (s, placement)
                if s == 0:
                    break
        return ClosenessReport(best[0], norm, tuple(best[1]), exact=True)
    s, placement = _local_search(scorer, spec, seed, restarts)
    return ClosenessReport(s, norm, placement, exact=False)


def bad_vertices(H: KPartiteHypergraph, target: KPartiteHypergraph, alpha) -> set[Vertex]:
    """Vertices missing more than ``alpha * n^(l-1)`` of their target edges."""
    _check_shape(H, target)
    bound = Fraction(alpha) * H.n ** (H.l - 1)
    missing: dict = {}
    for e in target.edges - H.edges:
        for v in e:
            missing[v] = missing.get(v, 0) + 1
    return {v for v, x in missing.items() if x > bound}


# -- edge types relative to a W placement ---------------------------------------

def _in_W(v: Vertex, W) -> bool:
    return v.pos in W[v.cls - 1]


def edge_type(e, W) -> str:
    """``U`` for every vertex outside ``W`` then ``W`` for every vertex inside, e.g. ``"UUUW"``.

    ``W`` lists the W positions per class (as in ``ClosenessReport.witness_W``).
    """
    inside = sum(1 for v in e if _in_W(v, W))
    return "U" * (len(e) - inside) + "W" * inside


def type_counts(edges, W) -> dict:
    """How many of ``edges`` have each type."""
    out: dict = {}
    for e in edges:
        t = edge_type(e, W)
        out[t] = out.get(t, 0) + 1
    return dict(sorted(out.items()))


def typed_completion(H: KPartiteHypergraph, W, edges, extra, pattern: str = "UUUW"):
    """Disjoint ``pattern``-type edges of ``H`` partitioning ``V(edges)`` plus ``extra``.

    This is the tuple-goodness test: ``x_1..x_4`` are good for three edges
    when the sixteen vertices split into four edges of type UUUW.  Returns
    the matching, or None when no such partition exists.
    """
    from rainbowlab.solvers.hypergraph import perfect_matching_on

    vertices = [v for e in edges for v in e] + [Vertex(*v) for v in extra]
    if len(set(vertices)) != len(vertices):
        raise InputError("the edges and extra vertices must be pairwise disjoint")
    for v in vertices:
        H.check_vertex(v)
    typed = H.with_edges(e for e in H.edges if edge_type(e, W) == pattern)
    return perfect_matching_on(typed, vertices)
