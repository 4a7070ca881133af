"""Hot search loops, compiled with numba when available.

Every kernel is written once in the numba-compatible subset of Python.  With
``RML_NUMBA=0`` in the environment (or numba missing) the same functions run
uncompiled on plain Python lists, which is the reference path the benchmark
compares against.

Conventions shared by the bit-mask kernels:

* ``bit[v]`` holds ``1 << v``; it is the only source of mask constants, so
  the kernels never mix uint64 with int64 literals (numba would promote the
  result to float64).
* ``ev`` is the ``(E, l)`` vertex table, ``masks`` the per-edge bit masks.
* Searches keep their whole DFS stack in caller-owned buffers and stop after
  ``max_nodes`` node expansions, so the Python side can resume them in slices
  and enforce wall-clock budgets.
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("RML_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

if not USE_NUMBA:
    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f

# search status codes
RUNNING, FOUND, EXHAUSTED, PAUSED = 0, 1, 2, 3


def buf(size, dtype=np.int64, fill=0):
    """Scratch buffer of the flavor the active path wants."""
    if USE_NUMBA:
        return np.full(max(int(size), 1), fill, dtype=dtype)
    cast = float if np.dtype(dtype).kind == "f" else int
    return [cast(fill)] * max(int(size), 1)


def arr(values, dtype=np.int64):
    """Read-only input array of the flavor the active path wants."""
    if USE_NUMBA:
        return np.ascontiguousarray(values, dtype=dtype)
    a = np.asarray(values)
    if np.dtype(dtype).kind == "f":
        return [float(x) for x in a.ravel()]
    return [int(x) for x in a.ravel()]


def bits(nv):
    return arr([1 << v for v in range(max(nv, 1))], dtype=np.uint64)


@njit(cache=True)
def popcount(x, bit):
    c = 0
    while x != 0:
        x = x & (x - bit[0])
        c += 1
    return c


@njit(cache=True)
def greedy_cover(ev, l, cand, nc, nv, limit, alive, deg):
    """Size of a greedy vertex cover of the candidate edges, capped at ``limit``.

    Any vertex cover bounds the matching number from above, so a result below
    the number of edges still needed proves a subtree infeasible.
    """
    for i in range(nc):
        alive[i] = 1
    count = 0
    left = nc
    while left > 0 and count < limit:
        for v in range(nv):
            deg[v] = 0
        for i in range(nc):
            if alive[i] == 1:
                e = cand[i]
                for j in range(l):
                    deg[ev[e * l + j]] += 1
        best = 0
        bv = -1
        for v in range(nv):
            if deg[v] > best:
                best = deg[v]
                bv = v
        if bv < 0:
            break
        count += 1
        for i in range(nc):
            if alive[i] == 1:
                e = cand[i]
                for j in range(l):
                    if ev[e * l + j] == bv:
                        alive[i] = 0
                        left -= 1
                        break
    return count


@njit(cache=True)
def perfect_matching_search(ev, l, masks, inc_ptr, inc_idx, bit, nv, full,
                            state, used, choice, pos, piv, cand, alive, deg, max_nodes):
    """DFS for a perfect matching of the vertices in ``full``.

    Branches on the lowest uncovered vertex; every edge must lie inside
    ``full``.  ``state = [depth, entering, nodes, status]``.  On FOUND the
    matching is ``choice[:depth]``.
    """
    ne = len(masks)
    d = state[0]
    entering = state[1]
    nodes = 0
    while True:
        if entering == 1:
            if nodes >= max_nodes:
                state[0] = d
                state[1] = entering
                state[2] += nodes
                state[3] = PAUSED
                return PAUSED
            nodes += 1
            u = used[d]
            rem = full & ~u
            if rem == 0:
                state[0] = d
                state[1] = 0
                state[2] += nodes
                state[3] = FOUND
                return FOUND
            v = 0
            while (rem & bit[v]) == 0:
                v += 1
            piv[d] = v
            pos[d] = inc_ptr[v]
            nc = 0
            for e in range(ne):
                if (masks[e] & u) == 0:
                    cand[nc] = e
                    nc += 1
            need = popcount(rem, bit) // l
            if greedy_cover(ev, l, cand, nc, nv, need, alive, deg) < need:
                pos[d] = inc_ptr[v + 1]
            entering = 0
        v = piv[d]
        p = pos[d]
        end = inc_ptr[v + 1]
        u = used[d]
        moved = False
        while p < end:
            e = inc_idx[p]
            p += 1
            if (masks[e] & u) == 0:
                pos[d] = p
                choice[d] = e
                used[d + 1] = u | masks[e]
                d += 1
                entering = 1
                moved = True
                break
        if not moved:
            pos[d] = p
            d -= 1
            if d < 0:
                state[0] = 0
                state[1] = 0
                state[2] += nodes
                state[3] = EXHAUSTED
                return EXHAUSTED


@njit(cache=True)
def max_matching_search(ev, l, masks, inc_ptr, inc_idx, bit, nv, stop_at,
                        state, used, cur, choice, pos, piv, best_choice,
                        cand, alive, deg, max_nodes):
    """Branch and bound for a maximum matching.

    Each node takes the lowest vertex that still has an available edge and
    either matches it through one of its edges (lexicographic order) or
    deletes it.  A subtree is cut when its size plus a greedy vertex cover of
    the remaining edges cannot beat the incumbent.  ``state = [depth,
    entering, nodes, status, best, best_len]``; the search stops early once
    ``best >= stop_at``.
    """
    ne = len(masks)
    d = state[0]
    entering = state[1]
    nodes = 0
    while True:
        if entering == 1:
            if nodes >= max_nodes:
                state[0] = d
                state[1] = entering
                state[2] += nodes
                state[3] = PAUSED
                return PAUSED
            nodes += 1
            u = used[d]
            nc = 0
            for e in range(ne):
                if (masks[e] & u) == 0:
                    cand[nc] = e
                    nc += 1
            if cur[d] > state[4]:
                state[4] = cur[d]
                k = 0
                for i in range(d):
                    if choice[i] >= 0:
                        best_choice[k] = choice[i]
                        k += 1
                state[5] = k
                if state[4] >= stop_at:
                    state[0] = d
                    state[1] = 0
                    state[2] += nodes
                    state[3] = FOUND
                    return FOUND
            entering = 0
            if nc == 0:
                piv[d] = -1
            else:
                slack = state[4] - cur[d] + 1
                if greedy_cover(ev, l, cand, nc, nv, slack, alive, deg) < slack:
                    piv[d] = -1
                else:
                    v = ev[cand[0] * l]
                    for i in range(nc):
                        for j in range(l):
                            w = ev[cand[i] * l + j]
                            if w < v:
                                v = w
                    piv[d] = v
                    pos[d] = inc_ptr[v]
        v = piv[d]
        moved = False
        if v >= 0:
            u = used[d]
            end = inc_ptr[v + 1]
            p = pos[d]
            while p < end:
                e = inc_idx[p]
                p += 1
                if (masks[e] & u) == 0:
                    pos[d] = p
                    choice[d] = e
                    used[d + 1] = u | masks[e]
                    cur[d + 1] = cur[d] + 1
                    d += 1
                    entering = 1
                    moved = True
                    break
            if not moved and p == end:
                pos[d] = end + 1
                choice[d] = -1
                used[d + 1] = u | bit[v]
                cur[d + 1] = cur[d]
                d += 1
                entering = 1
                moved = True
        if not moved:
            d -= 1
            if d < 0:
                state[0] = 0
                state[1] = 0
                state[2] += nodes
                state[3] = EXHAUSTED
                return EXHAUSTED


@njit(cache=True)
def rainbow_search(ev, l, masks, col_ptr, col_idx, bit, nv, target,
                   state, used, cnt, choice, pos, cand, alive, deg, max_nodes):
    """DFS choosing one edge per color (or skipping it) for ``target`` colors.

    Colors are visited in array order; ``col_idx[col_ptr[c]:col_ptr[c+1]]``
    lists color ``c``'s edges.  Pruning: remaining colors with an available
    edge must cover the shortfall, and so must a greedy cover of their union.
    On FOUND, ``choice[:depth]`` holds an edge index or -1 (skipped) per color.
    """
    C = len(col_ptr) - 1
    allowed_skips = C - target
    d = state[0]
    entering = state[1]
    nodes = 0
    while True:
        if entering == 1:
            if nodes >= max_nodes:
                state[0] = d
                state[1] = entering
                state[2] += nodes
                state[3] = PAUSED
                return PAUSED
            nodes += 1
            entering = 0
            if cnt[d] >= target:
                state[0] = d
                state[1] = 0
                state[2] += nodes
                state[3] = FOUND
                return FOUND
            pos[d] = col_ptr[C] + 1
            if d < C:
                u = used[d]
                need = target - cnt[d]
                live = 0
                nc = 0
                for c in range(d, C):
                    has = False
                    for p in range(col_ptr[c], col_ptr[c + 1]):
                        e = col_idx[p]
                        if (masks[e] & u) == 0:
                            cand[nc] = e
                            nc += 1
                            has = True
                    if has:
                        live += 1
                if live >= need:
                    if greedy_cover(ev, l, cand, nc, nv, need, alive, deg) >= need:
                        pos[d] = col_ptr[d]
        moved = False
        if d < C:
            u = used[d]
            end = col_ptr[d + 1]
            p = pos[d]
            while p < end:
                e = col_idx[p]
                p += 1
                if (masks[e] & u) == 0:
                    pos[d] = p
                    choice[d] = e
                    used[d + 1] = u | masks[e]
                    cnt[d + 1] = cnt[d] + 1
                    d += 1
                    entering = 1
                    moved = True
                    break
            if not moved and p == end:
                pos[d] = end + 1
                if d - cnt[d] < allowed_skips:
                    choice[d] = -1
                    used[d + 1] = u
                    cnt[d + 1] = cnt[d]
                    d += 1
                    entering = 1
                    moved = True
        if not moved:
            d -= 1
            if d < 0:
                state[0] = 0
                state[1] = 0
                state[2] += nodes
                state[3] = EXHAUSTED
                return EXHAUSTED


@njit(cache=True)
def graph_matching_dp(adj, nv, dp):
    """Maximum matching size of a simple graph by dynamic programming over
    vertex subsets; ``adj[v]`` is the neighbor bit mask of ``v``."""
    full = (1 << nv) - 1
    dp[0] = 0
    for mask in range(1, full + 1):
        v = 0
        while (mask >> v) & 1 == 0:
            v += 1
        rest = mask & ~(1 << v)
        best = dp[rest]
        nb = adj[v] & rest
        w = 0
        while nb != 0:
            if nb & 1:
                val = dp[rest & ~(1 << w)] + 1
                if val > best:
                    best = val
            nb >>= 1
            w += 1
        dp[mask] = best
    return dp[full]


@njit(cache=True)
def odd_components(adj, nv, alive_mask):
    """Number of odd connected components of the subgraph induced on ``alive_mask``."""
    left = alive_mask
    odd = 0
    while left != 0:
        v = 0
        while (left >> v) & 1 == 0:
            v += 1
        comp = 1 << v
        frontier = comp
        while frontier != 0:
            nxt = 0
            f = frontier
            w = 0
            while f != 0:
                if f & 1:
                    nxt |= adj[w]
                f >>= 1
                w += 1
            nxt &= alive_mask & ~comp
            comp |= nxt
            frontier = nxt
        size = 0
        c = comp
        while c != 0:
            size += c & 1
            c >>= 1
        if size % 2 == 1:
            odd += 1
        left &= ~comp
    return odd


@njit(cache=True)
def tutte_berge_exhaustive(adj, nv, out):
    """Maximize ``odd(G - S) - |S|`` over all vertex subsets ``S``.

    Ties prefer larger ``S``, then the smaller mask.  Writes
    ``out = [S mask, odd components, deficiency]``.
    """
    full = (1 << nv) - 1
    best = -(nv + 1)
    best_s = 0
    best_size = -1
    best_odd = 0
    for s in range(full + 1):
        size = 0
        c = s
        while c != 0:
            size += c & 1
            c >>= 1
        odd = odd_components(adj, nv, full & ~s)
        dfc = odd - size
        if dfc > best or (dfc == best and size > best_size):
            best = dfc
            best_s = s
            best_size = size
            best_odd = odd
    out[0] = best_s
    out[1] = best_odd
    out[2] = best
    return best


@njit(cache=True)
def nibble_round(ev, l, alive, u, prob, covered, hits, picked):
    """One random bite: select live edges with ``u[e] < prob``, keep those not
    sharing a vertex with another selected edge, cover their vertices and kill
    every live edge touching a covered vertex.  Returns the number kept;
    their indices are written to ``picked``.
    """
    ne = len(alive)
    nv = len(covered)
    for v in range(nv):
        hits[v] = 0
    for e in range(ne):
        if alive[e] == 1 and u[e] < prob:
            for j in range(l):
                hits[ev[e * l + j]] += 1
    kept = 0
    for e in range(ne):
        if alive[e] == 1 and u[e] < prob:
            ok = True
            for j in range(l):
                if hits[ev[e * l + j]] != 1:
                    ok = False
                    break
            if ok:
                picked[kept] = e
                kept += 1
    for i in range(kept):
        e = picked[i]
        for j in range(l):
            covered[ev[e * l + j]] = 1
    for e in range(ne):
        if alive[e] == 1:
            for j in range(l):
                if covered[ev[e * l + j]] == 1:
                    alive[e] = 0
                    break
    return kept
