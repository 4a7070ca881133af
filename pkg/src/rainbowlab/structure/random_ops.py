"""Seeded random constructions: Bernoulli sparsification and nibble covers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from rainbowlab import _kernels as K
from rainbowlab.core import Edge, InputError, KPartiteHypergraph
from rainbowlab.fractional.lp import edge_probabilities
from rainbowlab.solvers.hypergraph import Matching


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class SparsifierProfile:
    edge_probabilities: dict  # Edge -> Fraction
    seed: int


def sparsify(H: KPartiteHypergraph, fpms, seed: int = 0
             ) -> tuple[KPartiteHypergraph, SparsifierProfile]:
    """Keep each edge independently with probability ``sum_i f_i(e)``."""
    probs = edge_probabilities(fpms)
    for e, p in probs.items():
        if e not in H.edges:
            raise InputError(f"edge {e} of a supplied matching is not in H")
        if p > 1:
            raise InputError(f"edge {e} has probability {p} > 1")
    edges = sorted(probs)
    u = rng_for(seed).random(len(edges))
    kept = [e for e, x in zip(edges, u) if x < float(probs[e])]
    return H.with_edges(kept), SparsifierProfile(dict(zip(edges, (probs[e] for e in edges))), seed)


@dataclass
class NibbleResult:
    cover: list  # edges, sorted
    matching: Matching  # cover edges avoiding every multiply covered vertex
    rounds: int
    greedy_edges: int
    multiply_covered: int

    def as_dict(self) -> dict:
        return {"cover_size": len(self.cover), "matching_size": len(self.matching),
                "rounds": self.rounds, "greedy_edges": self.greedy_edges,
                "multiply_covered": self.multiply_covered}


def nibble_cover(H: KPartiteHypergraph, bite=Fraction(1, 10), seed: int = 0,
                 stop_below: float | None = None, max_rounds: int = 100_000) -> NibbleResult:
    """Edge cover from random bites followed by a greedy finish.

    Each round keeps every surviving edge with probability
    ``bite / D`` (``D`` the mean surviving degree of uncovered vertices),
    accepts the selected edges that meet no other selected edge and retires
    every edge touching a covered vertex.  Once fewer than ``k log n``
    vertices are uncovered the rest is covered greedily.  The returned
    matching drops every cover edge through a multiply covered vertex.
    """
    nv = H.n_vertices
    deg = H.degrees()
    if nv and deg.min() == 0:
        v = H.vertex_at(int(np.argmin(deg)))
        raise InputError(f"vertex {v} has degree 0, so no edge cover exists")
    edges = H.sorted_edges()
    ne = len(edges)
    stop = H.k * math.log(max(H.n, 2)) if stop_below is None else stop_below
    rng = rng_for(seed)
    ev_np = H.edge_array()
    ev = K.arr(ev_np.ravel() if ne else [0])
    alive = K.buf(max(ne, 1), fill=1)
    covered = K.buf(max(nv, 1))
    hits = K.buf(max(nv, 1))
    picked = K.buf(max(ne, 1))
    chosen: list[int] = []
    rounds = 0
    n_alive = ne
    uncovered = nv
    while uncovered >= stop and n_alive > 0 and rounds < max_rounds:
        rounds += 1
        alive_np = np.asarray(alive[:ne], dtype=bool)
        live_deg = np.bincount(ev_np[alive_np].ravel(), minlength=nv)
        cov_np = np.asarray(covered[:nv], dtype=bool)
        D = live_deg[~cov_np].mean() if uncovered else 0
        if D <= 0:
            break
        u = K.arr(rng.random(ne), np.float64)
        kept = K.nibble_round(ev, H.l, alive, u, float(bite) / float(D), covered, hits, picked)
        chosen.extend(int(picked[i]) for i in range(kept))
        uncovered = nv - int(np.count_nonzero(covered[:nv]))
        n_alive = int(np.count_nonzero(alive[:ne]))
    cov = set(H.vertex_at(i) for i in range(nv) if covered[i])
    cover = [edges[i] for i in chosen]
    inc = H.incidence()
    greedy = 0
    for v in H.vertices():
        if v in cov:
            continue
        best = min(inc[v], key=lambda e: (-sum(1 for x in e if x not in cov), e))
        cover.append(best)
        cov.update(best)
        greedy += 1
    counts: dict = {}
    for e in cover:
        for v in e:
            counts[v] = counts.get(v, 0) + 1
    multi = {v for v, c in counts.items() if c > 1}
    matching = Matching(tuple(e for e in cover if not multi.intersection(e)))
    return NibbleResult(sorted(cover), matching, rounds, greedy, len(multi))


def is_edge_cover(H: KPartiteHypergraph, cover) -> bool:
    seen = {v for e in cover for v in e}
    return all(e in H.edges for e in cover) and all(v in seen for v in H.vertices())
