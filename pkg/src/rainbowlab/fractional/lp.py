"""Fractional matchings and covers, closures and sorted covers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from rainbowlab.core import (
    Edge,
    InputError,
    KPartiteHypergraph,
    ResourceError,
    Vertex,
    complete,
)
from rainbowlab.fractional.simplex import LPResult, solve_packing

LP_CEILING = 200


@dataclass(frozen=True)
class FractionalAssignment:
    """Edge weights; only positive weights are stored."""

    weights: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {e: Fraction(w) for e, w in self.weights.items() if Fraction(w) != 0}
        object.__setattr__(self, "weights", dict(sorted(clean.items())))

    @property
    def size(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    @property
    def support(self) -> frozenset:
        return frozenset(self.weights)

    def loads(self) -> dict:
        """``sum_{e ∋ v} f(e)`` for every vertex touched by the support."""
        out: dict = {}
        for e, w in self.weights.items():
            for v in e:
                out[v] = out.get(v, Fraction(0)) + w
        return out

    def is_fractional_matching(self, H: KPartiteHypergraph) -> bool:
        return (all(e in H.edges and 0 <= w <= 1 for e, w in self.weights.items())
                and all(x <= 1 for x in self.loads().values()))

    def is_perfect(self, H: KPartiteHypergraph) -> bool:
        loads = self.loads()
        return self.is_fractional_matching(H) and all(loads.get(v) == 1 for v in H.vertices())


@dataclass(frozen=True)
class FractionalCover:
    """Non-negative vertex weights; zero weights are dropped."""

    weights: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {Vertex(*v): Fraction(w) for v, w in self.weights.items() if Fraction(w) != 0}
        object.__setattr__(self, "weights", dict(sorted(clean.items())))

    def __getitem__(self, v) -> Fraction:
        return self.weights.get(Vertex(*v), Fraction(0))

    @property
    def size(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def covers(self, H: KPartiteHypergraph) -> bool:
        return (all(w >= 0 for w in self.weights.values())
                and all(sum((self[v] for v in e), Fraction(0)) >= 1 for e in H.edges))


def _check_ceiling(H: KPartiteHypergraph, ceiling: int) -> None:
    if H.n_vertices > ceiling:
        raise ResourceError(f"LP ceiling is {ceiling} vertices, got {H.n_vertices}")


def solve_matching_lp(H: KPartiteHypergraph, ceiling: int = LP_CEILING) -> LPResult:
    """Maximum fractional matching LP of ``H`` (columns in sorted-edge order)."""
    _check_ceiling(H, ceiling)
    cols = [[H.index(v) for v in e] for e in H.sorted_edges()]
    return solve_packing(cols, H.n_vertices)


def _primal(H: KPartiteHypergraph, res: LPResult) -> FractionalAssignment:
    return FractionalAssignment({e: x for e, x in zip(H.sorted_edges(), res.x) if x})


def _dual(H: KPartiteHypergraph, res: LPResult) -> FractionalCover:
    return FractionalCover({H.vertex_at(i): y for i, y in enumerate(res.y) if y})


def nu_f(H: KPartiteHypergraph, ceiling: int = LP_CEILING) -> tuple[Fraction, FractionalAssignment]:
    """Fractional matching number and an optimal basic fractional matching."""
    res = solve_matching_lp(H, ceiling)
    return res.value, _primal(H, res)


def mu_f(H: KPartiteHypergraph, ceiling: int = LP_CEILING) -> tuple[Fraction, FractionalCover]:
    """Fractional cover number and a minimum fractional cover (the LP dual)."""
    res = solve_matching_lp(H, ceiling)
    cover = _dual(H, res)
    if cover.size != res.value:
        raise AssertionError(f"duality gap: nu_f={res.value}, mu_f={cover.size}")
    return cover.size, cover


def matching_and_cover(H: KPartiteHypergraph, ceiling: int = LP_CEILING
                       ) -> tuple[FractionalAssignment, FractionalCover]:
    """Both optimal LP solutions from one solve."""
    res = solve_matching_lp(H, ceiling)
    return _primal(H, res), _dual(H, res)


def complementary_slackness(H: KPartiteHypergraph, f: FractionalAssignment,
                            w: FractionalCover) -> list[str]:
    """Violations of complementary slackness (empty when both are optimal)."""
    problems = []
    loads = f.loads()
    for v, y in w.weights.items():
        if y > 0 and loads.get(v, 0) != 1:
            problems.append(f"vertex {v} has cover weight {y} but load {loads.get(v, 0)}")
    for e, x in f.weights.items():
        if x > 0 and sum((w[v] for v in e), Fraction(0)) != 1:
            problems.append(f"edge {e} has weight {x} but is not tight in the cover")
    return problems


def can_be_perfect(H: KPartiteHypergraph) -> bool:
    if H.l == H.k:
        return len(set(H.class_sizes)) == 1
    return H.n_vertices % H.l == 0


def sparse_fpm(H: KPartiteHypergraph, ceiling: int = LP_CEILING) -> FractionalAssignment | None:
    """A basic fractional perfect matching of ``H`` (support at most ``|V|``), or None.

    A fractional matching of size ``|V|/l`` saturates every vertex, so the
    optimal basic solution of the matching LP is perfect exactly when one
    exists.
    """
    if not can_be_perfect(H):
        return None
    value, f = nu_f(H, ceiling)
    if value * H.l != H.n_vertices:
        return None
    return f


def closure(H: KPartiteHypergraph, omega: FractionalCover | Mapping) -> KPartiteHypergraph:
    """All legal ``l``-sets over ``H``'s classes whose weight sum is at least 1."""
    w = omega if isinstance(omega, FractionalCover) else FractionalCover(omega)
    full = complete(H.class_sizes, H.l)
    return H.with_edges(e for e in full.edges if sum((w[v] for v in e), Fraction(0)) >= 1)


def sort_cover_monotone(H: KPartiteHypergraph, omega: FractionalCover | Mapping
                        ) -> tuple[KPartiteHypergraph, FractionalCover, dict]:
    """Relabel every class so cover weights are non-increasing in position.

    Ties keep the original position order.  Returns the relabeled hypergraph,
    the relabeled cover and the old->new vertex map.
    """
    w = omega if isinstance(omega, FractionalCover) else FractionalCover(omega)
    mapping = {}
    for c in range(1, H.k + 1):
        ranked = sorted(H.class_vertices(c), key=lambda v: (-w[v], v.pos))
        for new_pos, v in enumerate(ranked, start=1):
            mapping[v] = Vertex(c, new_pos)
    edges = [tuple(sorted(mapping[v] for v in e)) for e in H.edges]
    cover = FractionalCover({mapping[v]: x for v, x in w.weights.items()})
    return H.with_edges(edges), cover, mapping


def pair_loads(fpms) -> dict:
    """``sum_i sum_{e ⊇ {x,y}} f_i(e)`` for every pair covered by some support."""
    out: dict = {}
    for f in fpms:
        for e, w in f.weights.items():
            for pair in itertools.combinations(e, 2):
                out[pair] = out.get(pair, Fraction(0)) + w
    return out


def edge_probabilities(fpms) -> dict:
    """``p(e) = sum_i f_i(e)``."""
    out: dict = {}
    for f in fpms:
        for e, w in f.weights.items():
            out[e] = out.get(e, Fraction(0)) + w
    return out


def check_vertex(H: KPartiteHypergraph, v) -> Vertex:
    v = Vertex(*v)
    H.check_vertex(v)
    return v


__all__ = [
    "FractionalAssignment",
    "FractionalCover",
    "InputError",
    "closure",
    "complementary_slackness",
    "edge_probabilities",
    "matching_and_cover",
    "mu_f",
    "nu_f",
    "pair_loads",
    "sort_cover_monotone",
    "sparse_fpm",
]
