"""Hall-type greedy construction of rainbow matchings in 3-partite families."""

from __future__ import annotations

from typing import Sequence

from rainbowlab.constructions import check_family
from rainbowlab.core import KPartiteHypergraph, Vertex
from rainbowlab.solvers.hypergraph import RainbowMatching


def high_degree_sets(family: Sequence[KPartiteHypergraph], threshold: int) -> list[list[Vertex]]:
    """``A_i``: vertices of ``F_i`` with degree above ``threshold``."""
    out = []
    for F in family:
        inc = F.incidence()
        out.append([v for v in F.vertices() if len(inc[v]) > threshold])
    return out


def _sdr(options: list[list[Vertex]]) -> list[Vertex] | None:
    """System of distinct representatives by augmenting paths, or None."""
    owner: dict[Vertex, int] = {}

    def augment(i, seen):
        for v in options[i]:
            if v in seen:
                continue
            seen.add(v)
            if v not in owner or augment(owner[v], seen):
                owner[v] = i
                return True
        return False

    for i in range(len(options)):
        if not augment(i, set()):
            return None
    rep = [None] * len(options)
    for v, i in owner.items():
        rep[i] = v
    return rep


def greedy_rainbow_heuristic(family: Sequence[KPartiteHypergraph], threshold: int | None = None
                             ) -> RainbowMatching | None:
    """Sound but incomplete rainbow matching of size ``m = |F|``.

    Picks distinct representatives ``v_i`` of ``A_i ∩ (V_1 ∪ V_2)`` with
    ``A_i`` the vertices of degree above ``2 m n``, then, from color ``m``
    down to color 1, takes the first edge of ``F_i`` through ``v_i`` that
    avoids ``v_1..v_{i-1}`` and every edge already chosen.
    """
    family = list(family)
    check_family(family)
    m = len(family)
    n = family[0].n
    if threshold is None:
        threshold = 2 * m * n
    A = high_degree_sets(family, threshold)
    options = [[v for v in Ai if v.cls in (1, 2)] for Ai in A]
    reps = _sdr(options)
    if reps is None:
        return None
    blocked: set[Vertex] = set()
    picks = []
    for i in range(m - 1, -1, -1):
        avoid = blocked | set(reps[:i])
        v = reps[i]
        for e in family[i].incidence()[v]:
            if not avoid.intersection(e):
                picks.append((i + 1, e))
                blocked.update(e)
                break
        else:
            return None
    return RainbowMatching(tuple(picks))
