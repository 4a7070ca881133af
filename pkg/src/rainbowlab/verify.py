"""Independent witness checks.  Each returns a list of violated invariants.

These deliberately avoid the solvers' data structures so that a witness is
judged only against the instance it claims to solve.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from rainbowlab.core import KPartiteHypergraph, format_edge


def _overlaps(edges: Sequence, label) -> list[str]:
    seen: dict = {}
    problems = []
    for i, e in enumerate(edges):
        for v in e:
            if v in seen:
                problems.append(f"vertex {v} is shared by {label(seen[v])} and {label(i)}")
            else:
                seen[v] = i
    return problems


def check_matching(H: KPartiteHypergraph, edges: Iterable, perfect: bool = False) -> list[str]:
    edges = list(edges)
    problems = [f"edge {format_edge(e)} is not in the hypergraph" for e in edges if e not in H.edges]
    problems += _overlaps(edges, lambda i: f"edge {format_edge(edges[i])}")
    if perfect:
        covered = {v for e in edges for v in e}
        missed = [v for v in H.vertices() if v not in covered]
        if missed:
            problems.append(f"vertex {missed[0]} is not covered ({len(missed)} uncovered)")
    return problems


def check_rainbow(family: Sequence[KPartiteHypergraph], picks: Iterable, size: int | None = None,
                  perfect: bool = False) -> list[str]:
    """``picks`` are ``(color, edge)`` pairs with 1-based colors."""
    picks = list(picks)
    problems = []
    colors = [c for c, _ in picks]
    if len(set(colors)) != len(colors):
        problems.append("a color is used more than once")
    for c, e in picks:
        if not 1 <= c <= len(family):
            problems.append(f"color {c} out of range 1..{len(family)}")
        elif e not in family[c - 1].edges:
            problems.append(f"edge {format_edge(e)} is not in color {c}")
    problems += _overlaps([e for _, e in picks], lambda i: f"color {picks[i][0]}")
    if size is not None and len(picks) != size:
        problems.append(f"expected {size} edges, got {len(picks)}")
    if perfect and family:
        covered = {v for _, e in picks for v in e}
        missed = [v for v in family[0].vertices() if v not in covered]
        if missed:
            problems.append(f"vertex {missed[0]} is not covered")
    return problems


def check_fractional_matching(H: KPartiteHypergraph, weights: dict, perfect: bool = False
                              ) -> list[str]:
    problems = []
    loads: dict = {}
    for e, w in weights.items():
        w = Fraction(w)
        if e not in H.edges:
            problems.append(f"edge {format_edge(e)} is not in the hypergraph")
        if not 0 <= w <= 1:
            problems.append(f"edge {format_edge(e)} has weight {w} outside [0,1]")
        for v in e:
            loads[v] = loads.get(v, Fraction(0)) + w
    for v in H.vertices():
        x = loads.get(v, Fraction(0))
        if x > 1:
            problems.append(f"vertex {v} has load {x} > 1")
        elif perfect and x != 1:
            problems.append(f"vertex {v} has load {x}, not 1")
    return problems


def check_fractional_cover(H: KPartiteHypergraph, weights: dict) -> list[str]:
    problems = []
    w = {v: Fraction(x) for v, x in weights.items()}
    for v, x in w.items():
        if x < 0:
            problems.append(f"vertex {v} has negative weight {x}")
    for e in H.sorted_edges():
        s = sum((w.get(v, Fraction(0)) for v in e), Fraction(0))
        if s < 1:
            problems.append(f"edge {format_edge(e)} has cover sum {s} < 1")
            break
    return problems
