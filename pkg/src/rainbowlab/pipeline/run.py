"""Toy-scale orchestration of the rainbow perfect matching argument.

The lift ``H`` of the family is first compared with the primed extremal
construction.  Close instances go through staged greedy matchings guided by
the best W placement (with exact fallbacks, each logged).  Far instances
reserve an absorbing matching, cover most of the rest with a nibble and let
the absorbing matching swallow the leftover.  Every stage is recorded in a
JSON-friendly trace; nothing time-dependent goes into it, so equal inputs and
seeds give identical traces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from rainbowlab.constructions import (
    H13_spec,
    build_extremal,
    check_family,
    delta_threshold,
    lift_family,
    unlift_edge,
)
from rainbowlab.core import InputError, KPartiteHypergraph, ResourceError, Vertex, remove_vertices
from rainbowlab.solvers.hypergraph import (
    Matching,
    RainbowMatching,
    nu,
    perfect_matching_on,
)
from rainbowlab.structure.absorbing import find_absorbing
from rainbowlab.structure.closeness import bad_vertices, edge_type, min_closeness, type_counts
from rainbowlab.structure.random_ops import nibble_cover
from rainbowlab.verify import check_rainbow

MAX_PIPELINE_N = 16  # the lift must fit the 64-vertex exact solver


@dataclass(frozen=True)
class PipelineConfig:
    epsilon: Fraction = Fraction(1, 10)
    gamma: Fraction | None = None
    beta: Fraction | None = None
    eta: Fraction | None = None
    seed: int = 0
    budget_ms: float | None = None
    absorb_size: int = 2
    absorb_b: int | None = None  # defaults to k (one vertex per class)
    alpha: Fraction = Fraction(1, 4)
    exact_fallback: bool = True

    def __post_init__(self):
        eps = Fraction(self.epsilon)
        gamma = eps / 10 if self.gamma is None else Fraction(self.gamma)
        beta = gamma / 10 if self.beta is None else Fraction(self.beta)
        eta = beta / 10 if self.eta is None else Fraction(self.eta)
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "eta", eta)
        if not 0 < eta < beta < gamma < eps < 1:
            raise InputError(f"need 0 < eta < beta < gamma < epsilon < 1, got "
                             f"eta={eta}, beta={beta}, gamma={gamma}, epsilon={eps}")

    def as_dict(self) -> dict:
        return {"epsilon": str(self.epsilon), "gamma": str(self.gamma), "beta": str(self.beta),
                "eta": str(self.eta), "seed": self.seed, "absorb_size": self.absorb_size,
                "absorb_b": self.absorb_b, "alpha": str(self.alpha),
                "exact_fallback": self.exact_fallback}


@dataclass
class PipelineResult:
    witness: RainbowMatching | None
    branch: str
    trace: list = field(default_factory=list)
    diagnostic: str = ""

    def as_dict(self) -> dict:
        return {
            "branch": self.branch,
            "success": self.witness is not None,
            "diagnostic": self.diagnostic,
            "witness": None if self.witness is None else
            [[c, " ".join(str(v) for v in e)] for c, e in self.witness.picks],
            "trace": self.trace,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)


def degree_hypothesis_check(family: Sequence[KPartiteHypergraph]
                            ) -> tuple[bool, tuple[int, Vertex, int], int]:
    """Is every color's minimum vertex degree above ``delta(n, r, s)``?

    Returns ``(ok, (color, vertex, degree))`` for the lowest-degree vertex over
    all colors (first color, then lowest vertex on ties) and the threshold.
    """
    family = list(family)
    check_family(family)
    n = family[0].n
    _, _, threshold = delta_threshold(n)
    worst = None
    for i, F in enumerate(family, start=1):
        deg = F.degrees()
        j = int(deg.argmin())
        if worst is None or deg[j] < worst[2]:
            worst = (i, F.vertex_at(j), int(deg[j]))
    return worst[2] > threshold, worst, threshold


def lifted_degree_check(H: KPartiteHypergraph, n: int | None = None
                        ) -> tuple[bool, tuple[Vertex, Vertex, int], int]:
    """Pair degrees ``d_H({x, y})`` for ``x`` in the color class, measured on the lift."""
    n = H.n if n is None else n
    _, _, threshold = delta_threshold(n)
    counts: dict = {}
    for e in H.edges:
        x = e[0]
        for y in e[1:]:
            counts[(x, y)] = counts.get((x, y), 0) + 1
    worst = None
    for x in H.class_vertices(1):
        for c in range(2, H.k + 1):
            for y in H.class_vertices(c):
                d = counts.get((x, y), 0)
                if worst is None or d < worst[2]:
                    worst = (x, y, d)
    return worst[2] > threshold, worst, threshold


def _stage(trace, name, **info):
    entry = {"stage": name}
    entry.update(info)
    trace.append(entry)
    return entry


def _greedy(edges, blocked: set) -> list:
    picked = []
    for e in edges:
        if not blocked.intersection(e):
            picked.append(e)
            blocked.update(e)
    return picked


def _close_branch(H: KPartiteHypergraph, report, cfg: PipelineConfig, trace) -> Matching | None:
    spec = H13_spec(H.n, prime=True)
    placement = report.witness_W
    target = build_extremal(spec, placement)
    used: set = set()
    bad = sorted(bad_vertices(H, target, cfg.alpha))
    inc = H.incidence()
    m1 = []
    for v in bad:
        if v in used:
            continue
        for e in inc[v]:
            if not used.intersection(e):
                m1.append(e)
                used.update(e)
                break
    _stage(trace, "M1", role="cover alpha-bad vertices", bad=len(bad), size=len(m1))
    one_w = [e for e in H.sorted_edges() if edge_type(e, placement) == "UUUW"]
    m2 = _greedy(one_w, used)
    _stage(trace, "M2", role="one W vertex per edge, greedy", candidates=len(one_w), size=len(m2))
    m3 = _greedy([e for e in H.sorted_edges() if e not in m1 and e not in m2], used)
    _stage(trace, "M3a", role="remaining edges, greedy", size=len(m3))
    chosen = m1 + m2 + m3
    if len(chosen) * H.l == H.n_vertices:
        _stage(trace, "M4", role="composition", size=len(chosen), fallback=None,
               types=type_counts(chosen, placement))
        return Matching(tuple(chosen))
    # exact fallback on the vertices the greedy stages M2/M3a were meant to match
    rest = [v for v in H.vertices() if v not in {x for e in m1 for x in e}]
    pm = perfect_matching_on(H, rest, budget_ms=cfg.budget_ms)
    if pm is not None:
        _stage(trace, "M3b", role="exact matching of the vertices outside M1", size=len(pm),
               fallback="exact-after-M1")
        return Matching(tuple(m1) + pm.edges)
    _stage(trace, "M3b", role="exact matching of the vertices outside M1", size=0,
           fallback="exact-after-M1", failed=True)
    if not cfg.exact_fallback:
        return None
    pm = perfect_matching_on(H, list(H.vertices()), budget_ms=cfg.budget_ms)
    _stage(trace, "M4", role="exact matching of all of H", size=0 if pm is None else len(pm),
           fallback="exact-whole", failed=pm is None)
    return pm


def _far_branch(H: KPartiteHypergraph, cfg: PipelineConfig, trace) -> tuple[Matching | None, str]:
    b = H.k if cfg.absorb_b is None else cfg.absorb_b
    M = find_absorbing(H, cfg.absorb_size, b, seed=cfg.seed)
    _stage(trace, "absorbing", size_cap=cfg.absorb_size, b=b, size=None if M is None else len(M))
    failure = ""
    if M is None:
        failure = "no absorbing matching found at this size"
    else:
        try:
            R, mapping = remove_vertices(H, M.vertices())
            back = {new: old for old, new in mapping.items()}
            nib = nibble_cover(R, seed=cfg.seed)
        except InputError:
            nib = None
        if nib is None:
            failure = "a vertex outside the absorbing matching has no usable edge"
            _stage(trace, "nibble", size=0, failed=True)
        else:
            _stage(trace, "nibble", cover=len(nib.cover), size=len(nib.matching), rounds=nib.rounds)
            pruned = [tuple(back[v] for v in e) for e in nib.matching]
            covered = M.vertices() | {v for e in pruned for v in e}
            S = [v for v in H.vertices() if v not in covered]
            per_class = {c: sum(1 for v in S if v.cls == c) for c in range(1, H.k + 1)}
            _stage(trace, "leftover", size=len(S), per_class=[per_class[c] for c in sorted(per_class)])
            if len(S) <= b and len(set(per_class.values())) == 1:
                pm = perfect_matching_on(H, M.vertices() | set(S), budget_ms=cfg.budget_ms)
                _stage(trace, "absorb", size=0 if pm is None else len(pm), failed=pm is None)
                if pm is not None:
                    return Matching(tuple(pruned) + pm.edges), ""
                failure = "absorbing matching did not swallow the leftover"
            else:
                failure = f"leftover of {len(S)} vertices exceeds the absorbing capacity {b}"
    if cfg.exact_fallback:
        pm = perfect_matching_on(H, list(H.vertices()), budget_ms=cfg.budget_ms)
        _stage(trace, "exact", role="exact matching of all of H", size=0 if pm is None else len(pm),
               fallback="exact-whole", failed=pm is None, reason=failure)
        return pm, failure
    return None, failure


def run_pipeline(family: Sequence[KPartiteHypergraph], cfg: PipelineConfig | None = None
                 ) -> PipelineResult:
    cfg = PipelineConfig() if cfg is None else cfg
    family = list(family)
    sizes, l = check_family(family)
    n = len(family)
    if any(s != n for s in sizes) or l != len(sizes):
        raise InputError(f"need |F| = n equal classes with l = k; got |F|={n}, classes {sizes}, l={l}")
    if n > MAX_PIPELINE_N:
        raise ResourceError(f"pipeline is desk scale (n <= {MAX_PIPELINE_N}), got n={n}")
    trace: list = []
    H = lift_family(family)
    ok, worst, threshold = degree_hypothesis_check(family)
    _stage(trace, "hypothesis", holds=ok, threshold=threshold,
           worst={"color": worst[0], "vertex": str(worst[1]), "degree": worst[2]})
    _stage(trace, "lift", vertices=H.n_vertices, edges=len(H.edges))
    branch = "far"
    if len(sizes) == 3:
        report = min_closeness(H, H13_spec(n, prime=True), seed=cfg.seed)
        close = report.epsilon_achieved <= cfg.epsilon
        _stage(trace, "closeness", missing=report.missing_edges, normalizer=report.normalizer,
               epsilon=str(report.epsilon_achieved), exact=report.exact, close=close)
        if close:
            branch = "close"
    failure = ""
    if branch == "close":
        pm = _close_branch(H, report, cfg, trace)
    else:
        pm, failure = _far_branch(H, cfg, trace)
    if pm is not None:
        witness = RainbowMatching(tuple(unlift_edge(e) for e in pm.edges))
        problems = check_rainbow(family, witness.picks, size=n, perfect=True)
        if problems:
            raise AssertionError(f"pipeline produced an invalid witness: {problems[0]}")
        _stage(trace, "verify", valid=True, size=len(witness))
        return PipelineResult(witness, branch, trace, "")
    nus = [nu(F, budget_ms=cfg.budget_ms) for F in family]
    low = min(range(n), key=lambda i: (nus[i], i))
    if nus[low] < n:
        diag = (f"nu(F_{low + 1}) = {nus[low]} = n-{n - nus[low]}, so no rainbow perfect matching "
                f"exists")
    elif cfg.exact_fallback:
        diag = "exact search found no rainbow perfect matching"
    else:
        diag = failure or "composition failed"
    _stage(trace, "diagnostic", min_nu=nus[low], color=low + 1, message=diag)
    return PipelineResult(None, branch, trace, diag)
