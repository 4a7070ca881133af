"""Exact simplex for packing LPs ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0``.

The tableau is kept fraction-free: integer entries over one common
denominator ``D`` (the previous pivot).  Pivoting on ``p = T[r][q]`` maps
every other row to ``(p * T[i] - T[i][q] * T[r]) / D``, an exact integer
division, and sets ``D = p``.  The slack basis is feasible, so no phase one is
needed.

Pricing is largest reduced cost (lowest index on ties).  After
``bland_after`` consecutive degenerate pivots the entering variable switches
to Bland's smallest-index rule until a pivot makes progress, so the method
cannot cycle.  Leaving rows use the minimum ratio with ties to the smallest
basic variable.  Every choice is deterministic, and so is the final basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass
class LPResult:
    value: Fraction
    x: list  # structural values
    y: list  # dual values, one per row
    basis: list  # variable index per row; >= n_cols means a slack
    pivots: int


class Unbounded(ArithmeticError):
    pass


def solve_packing(columns: Sequence[Sequence[int]], n_rows: int, c: Sequence[int] | None = None,
                  b: Sequence[int] | None = None, rule: str = "dantzig",
                  bland_after: int = 50, max_pivots: int = 1_000_000) -> LPResult:
    """Solve the packing LP given by sparse 0/1 columns.

    ``columns[j]`` lists the rows in which variable ``j`` has coefficient 1.
    ``c`` and ``b`` default to all ones and must be non-negative integers.
    Returns an optimal basic solution together with the optimal duals.
    """
    n = len(columns)
    m = n_rows
    c = [1] * n if c is None else [int(v) for v in c]
    b = [1] * m if b is None else [int(v) for v in b]
    if any(v < 0 for v in b):
        raise ValueError("packing form needs b >= 0")
    width = n + m + 1
    rhs = n + m
    T = [[0] * width for _ in range(m + 1)]
    for j, rows in enumerate(columns):
        for i in rows:
            T[i][j] += 1
    for i in range(m):
        T[i][n + i] = 1
        T[i][rhs] = b[i]
    obj = T[m]
    for j in range(n):
        obj[j] = c[j]
    basis = [n + i for i in range(m)]
    D = 1
    pivots = 0
    degenerate_run = 0
    while True:
        if rule == "bland" or degenerate_run >= bland_after:
            q = next((j for j in range(n + m) if obj[j] > 0), -1)
        else:
            q = max(range(n + m), key=obj.__getitem__)
            if obj[q] <= 0:
                q = -1
        if q < 0:
            break
        r = -1
        for i in range(m):
            a = T[i][q]
            if a > 0:
                if r < 0:
                    r = i
                    continue
                # ratio T[i][rhs]/a vs T[r][rhs]/T[r][q]; ties -> smaller basic index
                lhs = T[i][rhs] * T[r][q]
                rhs_ = T[r][rhs] * a
                if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[r]):
                    r = i
        if r < 0:
            raise Unbounded("objective unbounded")
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("pivot limit reached")
        prow = T[r]
        p = prow[q]
        nz = [j for j in range(width) if prow[j]]
        for i in range(m + 1):
            if i == r:
                continue
            row = T[i]
            f = row[q]
            if f == 0:
                if p != D:
                    T[i] = [v * p // D for v in row]
                continue
            new = [v * p for v in row]
            for j in nz:
                new[j] -= f * prow[j]
            if D != 1:
                new = [v // D for v in new]
            T[i] = new
        obj = T[m]
        D = p
        basis[r] = q
        degenerate_run = degenerate_run + 1 if T[r][rhs] == 0 else 0
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = Fraction(T[i][rhs], D)
    y = [Fraction(-obj[n + i], D) for i in range(m)]
    value = Fraction(-obj[rhs], D)
    return LPResult(value=value, x=x, y=y, basis=list(basis), pivots=pivots)
