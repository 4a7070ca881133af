"""Greedy sequence of edge-disjoint sparse fractional perfect matchings."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from rainbowlab.core import InputError, KPartiteHypergraph
from rainbowlab.fractional.lp import LP_CEILING, FractionalAssignment, pair_loads, sparse_fpm

MAX_T = 256


@dataclass
class DecompositionReport:
    requested: int
    found: int
    reason: str  # "complete" or "no-fpm"
    removed_by_support: list = field(default_factory=list)
    removed_by_pairs: list = field(default_factory=list)
    max_pair_load: Fraction = Fraction(0)

    def as_dict(self) -> dict:
        return {
            "requested": self.requested,
            "found": self.found,
            "reason": self.reason,
            "removed_by_support": self.removed_by_support,
            "removed_by_pairs": self.removed_by_pairs,
            "max_pair_load": str(self.max_pair_load),
        }


def edge_disjoint_fpm(H: KPartiteHypergraph, t: int, pair_cap=3, pair_threshold=None,
                      max_t: int = MAX_T, ceiling: int = LP_CEILING
                      ) -> tuple[list[FractionalAssignment], DecompositionReport]:
    """Up to ``t`` fractional perfect matchings with pairwise disjoint supports.

    Before each step the supports found so far are deleted, together with
    every edge containing a vertex pair whose accumulated load exceeds
    ``pair_threshold`` (default ``pair_cap - 1``).  A single matching adds at
    most 1 to any pair, so surviving pairs end at load ``<= pair_cap``.
    """
    if t < 0 or t > max_t:
        raise InputError(f"t must lie in [0, {max_t}], got {t}")
    pair_cap = Fraction(pair_cap)
    threshold = pair_cap - 1 if pair_threshold is None else Fraction(pair_threshold)
    if threshold + 1 > pair_cap:
        raise InputError("pair_threshold + 1 must not exceed pair_cap")
    found: list[FractionalAssignment] = []
    used: set = set()
    report = DecompositionReport(requested=t, found=0, reason="complete")
    for _ in range(t):
        loads = pair_loads(found)
        heavy = {p for p, x in loads.items() if x > threshold}
        by_pairs = [e for e in H.edges if e not in used
                    and any((e[i], e[j]) in heavy for i in range(len(e)) for j in range(i + 1, len(e)))]
        keep = H.edges - used - set(by_pairs)
        report.removed_by_support.append(len(used))
        report.removed_by_pairs.append(len(by_pairs))
        f = sparse_fpm(H.with_edges(keep), ceiling)
        if f is None:
            report.reason = "no-fpm"
            break
        found.append(f)
        used |= f.support
    report.found = len(found)
    loads = pair_loads(found)
    report.max_pair_load = max(loads.values(), default=Fraction(0))
    if report.max_pair_load > pair_cap:
        raise AssertionError(f"pair load {report.max_pair_load} exceeds cap {pair_cap}")
    return found, report
