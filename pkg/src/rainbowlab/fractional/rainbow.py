"""Desk-scale search for rainbow fractional matchings of a prescribed size.

A witness takes one edge from every color and puts weights on those picks
so that they form a fractional matching of the requested size.  The search
fixes colors one at a time (fewest edges first).  At every node it solves
the packing LP whose columns are the fixed picks plus every edge of every
free color; this relaxes the one-edge-per-color condition, so a node whose
relaxation falls short of ``size`` is pruned.  When the relaxed optimum
already uses at most one edge per free color it is turned into a witness
directly.  The LP depends only on the multiset of fixed edges, so failed
nodes are memoized on that multiset.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from rainbowlab.constructions import check_family
from rainbowlab.core import KPartiteHypergraph, ResourceError
from rainbowlab.fractional.lp import nu_f
from rainbowlab.fractional.simplex import solve_packing

MAX_COLORS = 12
MAX_CLASS = 4
MAX_NODES = 20_000


class HypothesisWarning(UserWarning):
    """The family does not meet the degree-free existence hypothesis."""


@dataclass(frozen=True)
class RainbowFractionalPM:
    picks: tuple  # ((color, edge), ...) sorted by color, 1-based
    weights: tuple  # Fraction per pick

    @property
    def size(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def loads(self) -> dict:
        out: dict = {}
        for (_, e), w in zip(self.picks, self.weights):
            for v in e:
                out[v] = out.get(v, Fraction(0)) + w
        return out

    def problems(self, family: Sequence[KPartiteHypergraph], size=None) -> list[str]:
        """Invariant violations; empty for a valid witness."""
        out = []
        colors = [c for c, _ in self.picks]
        if colors != list(range(1, len(family) + 1)):
            out.append(f"picks must use each color 1..{len(family)} once, got {colors}")
        for (c, e), w in zip(self.picks, self.weights):
            if 1 <= c <= len(family) and e not in family[c - 1].edges:
                out.append(f"edge {e} is not in color {c}")
            if not 0 <= w <= 1:
                out.append(f"weight {w} of color {c} outside [0,1]")
        for v, x in self.loads().items():
            if x > 1:
                out.append(f"vertex {v} has load {x}")
        if size is not None and self.size != Fraction(size):
            out.append(f"size {self.size} differs from {Fraction(size)}")
        return out

    def is_perfect(self, H: KPartiteHypergraph) -> bool:
        loads = self.loads()
        return all(loads.get(v) == 1 for v in H.vertices())


def _check_scale(family) -> None:
    k = family[0].k
    n = max(family[0].class_sizes)
    if len(family) > MAX_COLORS or n > MAX_CLASS or k > MAX_CLASS:
        raise ResourceError(f"rainbow_fpm is desk scale only (|F| <= {MAX_COLORS}, "
                            f"at most {MAX_CLASS} classes of size <= {MAX_CLASS})")


def hypothesis_holds(family: Sequence[KPartiteHypergraph], size) -> tuple[bool, str]:
    size = Fraction(size)
    r = family[0].l
    need = math.ceil(r * size)
    if len(family) != need:
        return False, f"|F| = {len(family)} but ceil(r*size) = {need}"
    for i, F in enumerate(family, start=1):
        value, _ = nu_f(F)
        if value < size:
            return False, f"color {i} has fractional matching number {value} < {size}"
    return True, "ok"


def rainbow_fpm(family: Sequence[KPartiteHypergraph], size, max_nodes: int = MAX_NODES
                ) -> RainbowFractionalPM | None:
    """A rainbow fractional matching of total weight ``size``, or None."""
    family = list(family)
    check_family(family)
    _check_scale(family)
    size = Fraction(size)
    ok, why = hypothesis_holds(family, size)
    if not ok:
        warnings.warn(f"existence hypothesis violated: {why}", HypothesisWarning, stacklevel=2)
    if any(len(F) == 0 for F in family):
        return None
    H0 = family[0]
    edges = [F.sorted_edges() for F in family]
    order = sorted(range(len(family)), key=lambda c: (len(edges[c]), c))
    cols_of = {e: [H0.index(v) for v in e] for es in edges for e in es}
    failed: set = set()
    nodes = 0

    def relax(fixed):
        columns, owner = [], []
        for c, e in fixed:
            columns.append(cols_of[e])
            owner.append((c, e))
        for c in order[len(fixed):]:
            for e in edges[c]:
                columns.append(cols_of[e])
                owner.append((c, e))
        res = solve_packing(columns, H0.n_vertices)
        return res, owner

    def finish(res, owner):
        chosen: dict = {}
        weight: dict = {}
        for (c, e), x in zip(owner, res.x):
            if x > 0:
                if c in chosen and chosen[c] != e:
                    return None
                chosen[c] = e
                weight[c] = weight.get(c, Fraction(0)) + x
        scale = size / res.value if res.value else Fraction(0)
        picks, ws = [], []
        for c in range(len(family)):
            picks.append((c + 1, chosen.get(c, edges[c][0])))
            ws.append(weight.get(c, Fraction(0)) * scale)
        return RainbowFractionalPM(tuple(picks), tuple(ws))

    def search(fixed):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise ResourceError(f"rainbow_fpm node limit {max_nodes} reached")
        key = tuple(sorted(e for _, e in fixed))
        if key in failed:
            return None
        res, owner = relax(fixed)
        if res.value < size:
            failed.add(key)
            return None
        found = finish(res, owner)
        if found is not None:
            return found
        c = order[len(fixed)]
        positive = {}
        for (cc, e), x in zip(owner, res.x):
            if cc == c and x > 0:
                positive[e] = positive.get(e, 0) + x
        ranked = sorted(edges[c], key=lambda e: (-positive.get(e, 0), e))
        for e in ranked:
            out = search(fixed + [(c, e)])
            if out is not None:
                return out
        failed.add(key)
        return None

    return search([])
