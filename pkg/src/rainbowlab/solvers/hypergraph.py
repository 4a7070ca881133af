"""Exact matching solvers for k-partite hypergraphs and families of them."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from rainbowlab import _kernels as K
from rainbowlab.constructions import check_family, lift_family, unlift_edge
from rainbowlab.core import Edge, InputError, KPartiteHypergraph, ResourceError, format_edge

SLICE = 50_000


class SearchBudgetExceeded(ResourceError):
    def __init__(self, nodes: int, elapsed_ms: float):
        super().__init__(f"search budget exhausted after {nodes} nodes, {elapsed_ms:.0f} ms")
        self.nodes = nodes
        self.elapsed_ms = elapsed_ms


@dataclass(frozen=True)
class Matching:
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def vertices(self) -> set:
        return {v for e in self.edges for v in e}

    def __str__(self) -> str:
        return "; ".join(format_edge(e) for e in self.edges)


@dataclass(frozen=True)
class RainbowMatching:
    picks: tuple  # ((color, edge), ...) sorted by color, colors 1-based

    def __post_init__(self):
        object.__setattr__(self, "picks", tuple(sorted(self.picks)))

    def __len__(self) -> int:
        return len(self.picks)

    @property
    def colors(self) -> list[int]:
        return [c for c, _ in self.picks]

    @property
    def edges(self) -> list[Edge]:
        return [e for _, e in self.picks]

    def vertices(self) -> set:
        return {v for _, e in self.picks for v in e}


def _drive(step, state, budget_ms: float | None, max_nodes: int | None) -> int:
    start = time.perf_counter()
    while True:
        chunk = SLICE if max_nodes is None else max(1, min(SLICE, max_nodes - int(state[2])))
        status = step(chunk)
        if status != K.PAUSED:
            return status
        elapsed = (time.perf_counter() - start) * 1000
        if (budget_ms is not None and elapsed > budget_ms) or \
                (max_nodes is not None and state[2] >= max_nodes):
            raise SearchBudgetExceeded(int(state[2]), elapsed)


def _incidence_csr(ev: np.ndarray, nv: int):
    """Per-vertex lists of edge indices, ascending."""
    ne, l = ev.shape
    order = np.argsort(ev.ravel(), kind="stable")
    counts = np.bincount(ev.ravel(), minlength=nv)
    ptr = np.concatenate([[0], np.cumsum(counts)])
    idx = order // l
    return ptr, idx


def _mask_value(m: int):
    return np.uint64(m) if K.USE_NUMBA else int(m)


class _EdgeTables:
    """Kernel inputs for an edge list over a fixed vertex indexing."""

    def __init__(self, H: KPartiteHypergraph, edges: Sequence[Edge]):
        if H.n_vertices > 64:
            raise ResourceError(f"exact search supports at most 64 vertices, got {H.n_vertices}")
        self.H = H
        self.edges = list(edges)
        self.nv = max(H.n_vertices, 1)
        self.l = H.l
        ev = np.array([[H.index(v) for v in e] for e in self.edges],
                      dtype=np.int64).reshape(len(self.edges), H.l)
        masks = np.zeros(len(self.edges), dtype=np.uint64)
        for j in range(H.l):
            masks |= np.left_shift(np.uint64(1), ev[:, j].astype(np.uint64))
        ptr, idx = _incidence_csr(ev, self.nv)
        self.ev = K.arr(ev.ravel() if len(ev) else [0])
        self.masks = K.arr(masks, np.uint64)
        self.inc_ptr = K.arr(ptr)
        self.inc_idx = K.arr(idx if len(idx) else [0])
        self.bit = K.bits(self.nv)
        self.ne = len(self.edges)
        self.cand = K.buf(max(self.ne, 1))
        self.alive = K.buf(max(self.ne, 1))
        self.deg = K.buf(self.nv)


def _perfect_search(H: KPartiteHypergraph, full_mask: int, budget_ms=None, max_nodes=None):
    """Perfect matching of the vertices in ``full_mask`` using edges inside it."""
    edges = [e for e in H.sorted_edges() if not (H.vertex_mask(e) & ~full_mask)]
    if full_mask == 0:
        return []
    if not edges:
        return None
    t = _EdgeTables(H, edges)
    depth = bin(full_mask).count("1") // H.l + 2
    state = K.buf(4)
    state[1] = 1
    used = K.buf(depth, np.uint64)
    choice = K.buf(depth)
    pos = K.buf(depth)
    piv = K.buf(depth)
    full = _mask_value(full_mask)

    def step(chunk):
        return K.perfect_matching_search(t.ev, t.l, t.masks, t.inc_ptr, t.inc_idx, t.bit, t.nv,
                                         full, state, used, choice, pos, piv, t.cand, t.alive,
                                         t.deg, chunk)

    status = _drive(step, state, budget_ms, max_nodes)
    if status == K.FOUND:
        return [edges[int(choice[i])] for i in range(int(state[0]))]
    return None


def has_perfect_matching(H: KPartiteHypergraph, budget_ms: float | None = None,
                         max_nodes: int | None = None) -> tuple[bool, Matching | None]:
    """Decide whether ``H`` has a perfect matching; returns ``(answer, witness)``."""
    if H.l == H.k:
        if len(set(H.class_sizes)) > 1:
            return False, None
    elif H.n_vertices % H.l:
        return False, None
    full = (1 << H.n_vertices) - 1
    found = _perfect_search(H, full, budget_ms, max_nodes)
    if found is None:
        return False, None
    return True, Matching(tuple(found))


def perfect_matching_on(H: KPartiteHypergraph, vertices, budget_ms=None, max_nodes=None
                        ) -> Matching | None:
    """Perfect matching of ``H[vertices]`` in the original labels, or None."""
    found = _perfect_search(H, H.vertex_mask(vertices), budget_ms, max_nodes)
    return None if found is None else Matching(tuple(found))


def matching_upper_bound(H: KPartiteHypergraph) -> int:
    if H.l == H.k:
        return min(H.class_sizes)
    return H.n_vertices // H.l


def max_matching(H: KPartiteHypergraph, target: int | None = None, budget_ms: float | None = None,
                 max_nodes: int | None = None) -> tuple[int, Matching]:
    """Maximum matching by branch and bound; with ``target`` stop once that size is reached."""
    edges = H.sorted_edges()
    if not edges:
        return 0, Matching(())
    t = _EdgeTables(H, edges)
    stop_at = matching_upper_bound(H)
    if target is not None:
        stop_at = min(stop_at, target)
    depth = H.n_vertices + 2
    state = K.buf(6)
    state[1] = 1
    used = K.buf(depth, np.uint64)
    cur = K.buf(depth)
    choice = K.buf(depth)
    pos = K.buf(depth)
    piv = K.buf(depth)
    best = K.buf(depth)

    def step(chunk):
        return K.max_matching_search(t.ev, t.l, t.masks, t.inc_ptr, t.inc_idx, t.bit, t.nv,
                                     stop_at, state, used, cur, choice, pos, piv, best,
                                     t.cand, t.alive, t.deg, chunk)

    _drive(step, state, budget_ms, max_nodes)
    chosen = [edges[int(best[i])] for i in range(int(state[5]))]
    return int(state[4]), Matching(tuple(chosen))


def nu(H: KPartiteHypergraph, **kw) -> int:
    return max_matching(H, **kw)[0]


def rainbow_matching(family: Sequence[KPartiteHypergraph], target: int | None = None,
                     budget_ms: float | None = None, max_nodes: int | None = None
                     ) -> RainbowMatching | None:
    """Exhaustive search for a rainbow matching on ``target`` distinct colors.

    Colors are tried in ascending edge count (fail-first, ties by index) and
    edges within a color in lexicographic order, so the witness is
    deterministic.
    """
    family = list(family)
    check_family(family)
    target = len(family) if target is None else int(target)
    if not 0 <= target <= len(family):
        raise InputError(f"target {target} outside [0, {len(family)}]")
    if target == 0:
        return RainbowMatching(())
    H0 = family[0]
    order = sorted(range(len(family)), key=lambda i: (len(family[i].edges), i))
    all_edges = []
    ptr = [0]
    for i in order:
        all_edges.extend(family[i].sorted_edges())
        ptr.append(len(all_edges))
    t = _EdgeTables(H0, all_edges)
    C = len(family)
    state = K.buf(4)
    state[1] = 1
    used = K.buf(C + 2, np.uint64)
    cnt = K.buf(C + 2)
    choice = K.buf(C + 2)
    pos = K.buf(C + 2)
    col_ptr = K.arr(ptr)
    col_idx = K.arr(list(range(len(all_edges))) or [0])

    def step(chunk):
        return K.rainbow_search(t.ev, t.l, t.masks, col_ptr, col_idx, t.bit, t.nv, target,
                                state, used, cnt, choice, pos, t.cand, t.alive, t.deg, chunk)

    status = _drive(step, state, budget_ms, max_nodes)
    if status != K.FOUND:
        return None
    picks = []
    for depth in range(int(state[0])):
        e = int(choice[depth])
        if e >= 0:
            picks.append((order[depth] + 1, all_edges[e]))
    return RainbowMatching(tuple(picks))


def rainbow_via_lift(family: Sequence[KPartiteHypergraph], budget_ms: float | None = None,
                     max_nodes: int | None = None) -> RainbowMatching | None:
    """Rainbow perfect matching through a perfect matching of the lift."""
    family = list(family)
    sizes, _ = check_family(family)
    if any(s != len(family) for s in sizes):
        raise InputError(f"lift route needs |F| = class size; got |F|={len(family)}, "
                         f"classes {sizes}")
    ok, witness = has_perfect_matching(lift_family(family), budget_ms, max_nodes)
    if not ok:
        return None
    return RainbowMatching(tuple(unlift_edge(e) for e in witness.edges))
