"""Extremal constructions, the 4-partite lift and closed-form thresholds."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from rainbowlab.core import (
    Edge,
    InputError,
    KPartiteHypergraph,
    Vertex,
    complete,
    make_edge,
)

W_HITTING = "W-HITTING"
W_AND_U_HITTING = "W-AND-U-HITTING"
VARIANTS = (W_HITTING, W_AND_U_HITTING)


@dataclass(frozen=True)
class ExtremalSpec:
    """Parameters of ``H_{k,l}(n; d_1..d_k)`` or its primed variant.

    With ``lifted=True`` class 1 is a color class (``d[0]`` must be 0): its
    vertices belong to neither ``W`` nor ``U`` and the hitting conditions are
    evaluated on the remaining classes.  This describes ``H_{1,3}(n)`` and
    ``H'_{1,3}(n)`` directly.
    """

    k: int
    l: int
    n: int
    d: tuple
    variant: str = W_HITTING
    lifted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if self.k < 2:
            raise InputError("k must be at least 2")
        if not 2 <= self.l <= self.k:
            raise InputError(f"need 2 <= l <= k, got l={self.l}, k={self.k}")
        if len(self.d) != self.k:
            raise InputError(f"need {self.k} values of d, got {len(self.d)}")
        if any(not 0 <= x <= self.n for x in self.d):
            raise InputError(f"every d_i must lie in [0, {self.n}]")
        if self.variant not in VARIANTS:
            raise InputError(f"unknown variant {self.variant!r}")
        if self.lifted and self.d[0] != 0:
            raise InputError("lifted specs keep the color class out of W (d[0] = 0)")

    @property
    def class_sizes(self) -> tuple:
        return (self.n,) * self.k

    def canonical_placement(self) -> tuple:
        """``W_i`` = the lowest ``d_i`` positions of class ``i``."""
        return tuple(frozenset(range(1, di + 1)) for di in self.d)


@dataclass(frozen=True)
class ThresholdParams:
    """``value = 3 r + s`` with ``s`` in {1, 2, 3}; ``of`` names the decomposed quantity."""

    n: int
    r: int
    s: int
    of: str = "n"

    @classmethod
    def decompose(cls, n: int, value: int | None = None, of: str = "n") -> "ThresholdParams":
        value = n if value is None else value
        if value < 1:
            raise InputError("need a positive value to write as 3r + s")
        r = (value - 1) // 3
        return cls(n=n, r=r, s=value - 3 * r, of=of)

    @property
    def delta(self) -> int:
        return delta_rs(self.n, self.r, self.s)


def delta_rs(n: int, r: int, s: int) -> int:
    """Piecewise vertex-degree threshold ``delta(n, r, s)``."""
    if s == 1:
        return n * n - (n - r) ** 2
    if s == 2:
        return n * n - (n - r + 1) * (n - r - 1)
    if s == 3:
        return n * n - (n - r) * (n - r - 1)
    raise InputError(f"s must be 1, 2 or 3, got {s}")


def delta_threshold(n: int) -> tuple[int, int, int]:
    """``(r, s, delta)`` with ``n = 3r + s``, ``1 <= s <= 3``."""
    if n < 1:
        raise InputError("n must be positive")
    p = ThresholdParams.decompose(n)
    return p.r, p.s, p.delta


def d3_threshold(n: int, m: int) -> int:
    """Minimum vertex degree of the balanced 3-partite construction with ``|W| = m``.

    The branch ``m = 1 (mod 3)`` uses ``n^2 - (n - (m-1)/3)^2``.
    """
    if not 0 <= m <= n:
        raise InputError(f"need 0 <= m <= n, got m={m}, n={n}")
    if m % 3 == 1:
        return n * n - (n - (m - 1) // 3) ** 2
    return n * n - (n - m // 3) * (n - (m + 1) // 3)


def edge_predicate(spec: ExtremalSpec, placement: Sequence[Iterable[int]] | None = None
                   ) -> Callable[[Edge], bool]:
    """Membership test for the construction under a given ``W`` placement."""
    W = spec.canonical_placement() if placement is None else tuple(frozenset(w) for w in placement)
    if len(W) != spec.k or any(len(w) != di for w, di in zip(W, spec.d)):
        raise InputError("placement sizes do not match d")
    skip = 1 if spec.lifted else 0
    need_u = spec.variant == W_AND_U_HITTING

    def pred(e: Edge) -> bool:
        hit_w = hit_u = False
        for v in e:
            if v.cls <= skip:
                continue
            if v.pos in W[v.cls - 1]:
                hit_w = True
            else:
                hit_u = True
        return hit_w and (hit_u or not need_u)

    return pred


def build_extremal(spec: ExtremalSpec, placement: Sequence[Iterable[int]] | None = None
                   ) -> KPartiteHypergraph:
    """All legal ``l``-edges meeting ``W`` (and ``V - W`` for the primed variant)."""
    pred = edge_predicate(spec, placement)
    full = complete(spec.class_sizes, spec.l)
    if spec.lifted:
        edges = [e for e in full.edges if e[0].cls == 1 and pred(e)]
    else:
        edges = [e for e in full.edges if pred(e)]
    return KPartiteHypergraph(spec.class_sizes, edges, spec.l)


def balanced_d(m: int, k: int) -> tuple:
    """Split ``m`` into ``k`` near-equal parts, larger parts on lower classes."""
    q, r = divmod(m, k)
    return tuple([q + 1] * r + [q] * (k - r))


def balanced_spec(n: int, m: int, variant: str = W_HITTING, k: int = 3, l: int | None = None
                  ) -> ExtremalSpec:
    if not 0 <= m <= k * n:
        raise InputError(f"need 0 <= m <= {k * n}")
    return ExtremalSpec(k=k, l=k if l is None else l, n=n, d=balanced_d(m, k), variant=variant)


def build_balanced(n: int, m: int, variant: str = W_HITTING, k: int = 3) -> KPartiteHypergraph:
    """``H_k(n, m)`` or ``H'_k(n, m)``."""
    return build_extremal(balanced_spec(n, m, variant, k))


def is_intersecting(edges: Iterable[Edge]) -> bool:
    edges = [frozenset(e) for e in edges]
    return all(a & b for a, b in itertools.combinations(edges, 2))


def star_family(n: int, center: Vertex, k: int = 3) -> list[Edge]:
    """All legal k-edges of ``K(n,..,n)`` through ``center``."""
    pools = [[Vertex(c, p) for p in range(1, n + 1)] if c != center.cls else [center]
             for c in range(1, k + 1)]
    return [tuple(e) for e in itertools.product(*pools)]


def triangle_family(n: int, anchors: Sequence[Vertex]) -> list[Edge]:
    """3-edges containing at least two of the three anchors (one per class).

    Any two such edges share an anchor, so the family is intersecting.
    """
    a = {v.cls: v for v in anchors}
    if sorted(a) != [1, 2, 3]:
        raise InputError("need one anchor in each of classes 1, 2, 3")
    out = set()
    for free in (1, 2, 3):
        pools = [[a[c]] if c != free else [Vertex(c, p) for p in range(1, n + 1)]
                 for c in (1, 2, 3)]
        out.update(tuple(e) for e in itertools.product(*pools))
    return sorted(out)


def build_star_member(n: int, m: int, edges: Iterable | None = None, kind: str = "star"
                      ) -> KPartiteHypergraph:
    """A member of ``H*_3(n; m)``: ``H_3(n, m-1)`` plus an intersecting family.

    ``kind="star"`` uses every edge through the first vertex of ``U_1``;
    ``kind="triangle"`` uses the edges meeting two of the first ``U``-vertices
    of the three classes.  An explicit ``edges`` list overrides ``kind`` and
    must be pairwise intersecting.
    """
    if m < 1:
        raise InputError("m must be at least 1")
    base_spec = balanced_spec(n, m - 1)
    base = build_extremal(base_spec)
    if edges is not None:
        extra = [make_edge(e) for e in edges]
        if not is_intersecting(extra):
            raise InputError("supplied edges are not pairwise intersecting")
    else:
        firsts = []
        for c, dc in enumerate(base_spec.d, start=1):
            firsts.append(Vertex(c, dc + 1) if dc < n else None)
        if kind == "star":
            if firsts[0] is None:
                raise InputError("U_1 is empty; no star center available")
            extra = star_family(n, firsts[0])
        elif kind == "triangle":
            if None in firsts:
                raise InputError("some U_i is empty; no triangle anchors available")
            extra = triangle_family(n, firsts)
        else:
            raise InputError(f"unknown intersecting family kind {kind!r}")
    return base.with_edges(base.edges | set(extra))


def check_family(family: Sequence[KPartiteHypergraph]) -> tuple:
    """Validate a shared vertex set; returns ``(class_sizes, l)``."""
    if not family:
        raise InputError("empty family")
    shape = (family[0].class_sizes, family[0].l)
    for i, F in enumerate(family, start=1):
        if (F.class_sizes, F.l) != shape:
            raise InputError(f"family member {i} has shape {F.class_sizes}/{F.l}, "
                             f"expected {shape[0]}/{shape[1]}")
    return shape


def lift_edge(color: int, e: Edge) -> Edge:
    return (Vertex(1, color),) + tuple(Vertex(v.cls + 1, v.pos) for v in e)


def unlift_edge(e: Edge) -> tuple[int, Edge]:
    head, *rest = e
    if head.cls != 1:
        raise InputError(f"lifted edge {e} has no color vertex")
    return head.pos, tuple(Vertex(v.cls - 1, v.pos) for v in rest)


def lift_family(family: Sequence[KPartiteHypergraph]) -> KPartiteHypergraph:
    """Tag every edge of color ``i`` with a new vertex ``v_i`` in a prepended class."""
    sizes, l = check_family(family)
    edges = [lift_edge(i, e) for i, F in enumerate(family, start=1) for e in F.edges]
    return KPartiteHypergraph((len(family), *sizes), edges, l + 1)


def build_H13(n: int, prime: bool = False) -> KPartiteHypergraph:
    """``H_{1,3}(n)`` (or the primed form): the lift of ``n`` copies of ``H_3(n, n)``."""
    F = build_balanced(n, n, W_AND_U_HITTING if prime else W_HITTING)
    return lift_family([F] * n)


def H13_spec(n: int, prime: bool = False) -> ExtremalSpec:
    """Spec equivalent of ``build_H13`` for closeness measurements."""
    return ExtremalSpec(k=4, l=4, n=n, d=(0, *balanced_d(n, 3)),
                        variant=W_AND_U_HITTING if prime else W_HITTING, lifted=True)
