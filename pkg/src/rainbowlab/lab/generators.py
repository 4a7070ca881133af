"""Seeded random instances."""

from __future__ import annotations

import numpy as np

from rainbowlab.core import InputError, KPartiteHypergraph, complete


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_hypergraph(class_sizes, p: float, seed: int = 0, l: int | None = None,
                      min_degree: int = 0, rng: np.random.Generator | None = None
                      ) -> KPartiteHypergraph:
    """Each legal ``l``-set is an edge with probability ``p``.

    With ``min_degree`` > 0, vertices below the floor then receive random
    extra edges (in vertex order) until the floor is met.
    """
    if not 0 <= p <= 1:
        raise InputError(f"edge probability must lie in [0,1], got {p}")
    rng = rng_for(seed) if rng is None else rng
    full = complete(class_sizes, l)
    pool = full.sorted_edges()
    if min_degree > 0 and pool and min(np.bincount(full.edge_array().ravel(),
                                                   minlength=full.n_vertices)) < min_degree:
        raise InputError(f"degree floor {min_degree} exceeds the complete hypergraph's minimum degree")
    u = rng.random(len(pool))
    edges = {e for e, x in zip(pool, u) if x < p}
    if min_degree > 0:
        inc = full.incidence()
        for v in full.vertices():
            have = [e for e in inc[v] if e in edges]
            if len(have) >= min_degree:
                continue
            spare = [e for e in inc[v] if e not in edges]
            pick = rng.choice(len(spare), size=min_degree - len(have), replace=False)
            edges.update(spare[i] for i in sorted(pick))
    return full.with_edges(edges)


def random_family(count: int, class_sizes, p: float, seed: int = 0, l: int | None = None,
                  min_degree: int = 0) -> list[KPartiteHypergraph]:
    rng = rng_for(seed)
    return [random_hypergraph(class_sizes, p, l=l, min_degree=min_degree, rng=rng)
            for _ in range(count)]
