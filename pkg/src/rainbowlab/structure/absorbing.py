"""Absorbing matchings: exhaustive verification and randomized search."""

from __future__ import annotations

import itertools
import math

import numpy as np

from rainbowlab.core import KPartiteHypergraph, ResourceError, Vertex
from rainbowlab.solvers.hypergraph import Matching, perfect_matching_on

ENUMERATION_LIMIT = 200_000


def _free_by_class(H: KPartiteHypergraph, M: Matching) -> list[list[Vertex]]:
    used = M.vertices()
    return [[v for v in H.class_vertices(c) if v not in used] for c in range(1, H.k + 1)]


def balanced_subsets(H: KPartiteHypergraph, M: Matching, b: int):
    """Balanced ``S`` outside ``V(M)`` with ``|S| <= b``, smallest first."""
    free = _free_by_class(H, M)
    for j in range(b // H.k + 1):
        for parts in itertools.product(*(itertools.combinations(f, j) for f in free)):
            yield tuple(v for part in parts for v in part)


def count_balanced_subsets(H: KPartiteHypergraph, M: Matching, b: int) -> int:
    free = _free_by_class(H, M)
    return sum(math.prod(math.comb(len(f), j) for f in free) for j in range(b // H.k + 1))


def verify_absorbing(H: KPartiteHypergraph, M: Matching, b: int, limit: int = ENUMERATION_LIMIT,
                     budget_ms: float | None = None) -> tuple[bool, tuple | None]:
    """Check that ``H[S ∪ V(M)]`` has a perfect matching for every balanced small ``S``.

    Returns ``(True, None)`` or ``(False, S)`` with the first failing ``S``.
    """
    for e in M:
        if e not in H.edges:
            raise ValueError(f"matching edge {e} is not in H")
    total = count_balanced_subsets(H, M, b)
    if total > limit:
        raise ResourceError(f"{total} balanced sets to check, limit is {limit}")
    base = M.vertices()
    for checked, S in enumerate(balanced_subsets(H, M, b)):
        try:
            pm = perfect_matching_on(H, base.union(S), budget_ms=budget_ms)
        except ResourceError as exc:
            raise ResourceError(f"stopped after {checked} of {total} sets: {exc}") from exc
        if pm is None:
            return False, S
    return True, None


def random_matching(H: KPartiteHypergraph, size: int, rng: np.random.Generator) -> Matching:
    """Greedy matching over a random edge order, stopped at ``size`` edges."""
    edges = H.sorted_edges()
    picked, used = [], set()
    for i in rng.permutation(len(edges)):
        e = edges[i]
        if not used.intersection(e):
            picked.append(e)
            used.update(e)
            if len(picked) == size:
                break
    return Matching(tuple(picked))


def find_absorbing(H: KPartiteHypergraph, size_cap: int, b: int, seed: int = 0,
                   attempts: int = 200, limit: int = ENUMERATION_LIMIT) -> Matching | None:
    """Random matchings of size ``1..size_cap`` until one absorbs, else None."""
    if b == 0:
        return Matching(())
    if not H.edges or size_cap < 1:
        return None
    rng = np.random.default_rng(seed)
    for attempt in range(attempts):
        size = 1 + attempt % size_cap
        M = random_matching(H, size, rng)
        try:
            ok, _ = verify_absorbing(H, M, b, limit)
        except ResourceError:
            return None
        if ok:
            return M
    return None
