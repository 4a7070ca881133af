"""Acceptance suite: twelve end-to-end criteria at their stated scales and time limits.

Each test prints one ``PASS`` or ``FAIL`` line (visible in ``pytest -v``
output) before asserting, so a full run doubles as a scorecard.
"""

from __future__ import annotations

import itertools
import json
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from oracles import (
    balanced_sets,
    graph_matching_number,
    has_perfect_matching_on,
    min_vertex_degree,
    rainbow_exists,
)
from rainbowlab.constructions import (
    build_balanced,
    build_star_member,
    d3_threshold,
    delta_threshold,
)
from rainbowlab.core import KPartiteHypergraph, Vertex, complete, min_l_degree
from rainbowlab.fractional import (
    complementary_slackness,
    edge_disjoint_fpm,
    matching_and_cover,
    pair_loads,
    sparse_fpm,
)
from rainbowlab.lab.generators import random_family, random_hypergraph, rng_for
from rainbowlab.solvers.graphs import (
    blossom_pairs,
    brute_force_pairs,
    konig_min_cover,
    tutte_berge_pairs,
)
from rainbowlab.solvers.hypergraph import Matching, rainbow_matching, rainbow_via_lift
from rainbowlab.structure import nibble_cover, sparsify, verify_absorbing
from rainbowlab.structure.absorbing import _free_by_class


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str, elapsed: float, limit: float):
        ok = ok and elapsed < limit
        line = (f"{'PASS' if ok else 'FAIL'} criterion {number:>2} ({title}): {detail}; "
                f"{elapsed:.1f}s of {limit:.0f}s")
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return emit


def test_c01_extremal_family_has_no_rainbow_pm(report):
    start = time.perf_counter()
    results = {}
    for n in (3, 4, 5, 6):
        family = [build_balanced(n, n - 1)] * n
        results[n] = (rainbow_matching(family), rainbow_via_lift(family))
    ok = all(a is None and b is None for a, b in results.values())
    report(1, "extremal negative", ok, "exact and lift solvers return None for n=3..6",
           time.perf_counter() - start, 10)


def test_c02_threshold_formulas_match_brute_force(report):
    start = time.perf_counter()
    bad = []
    for n in range(2, 9):
        for m in range(n + 1):
            if m % 3 != 1 and min_vertex_degree(build_balanced(n, m)) != d3_threshold(n, m):
                bad.append(("d3", n, m))
        r, s, delta = delta_threshold(n)
        if s in (1, 3):
            got = min_vertex_degree(build_balanced(n, n - 1))
        elif n >= 5:
            got = min_vertex_degree(build_star_member(n, n, kind="triangle"))
        else:  # too small for the triangle family; the value sits one above the balanced one
            got = min_vertex_degree(build_balanced(n, n - 1)) + 1
        if got != delta:
            bad.append(("delta", n, got, delta))
    report(2, "threshold formulas", not bad, f"{len(bad)} mismatches for 2<=n<=8",
           time.perf_counter() - start, 5)


def test_c03_lift_equivalence(report):
    start = time.perf_counter()
    rng = rng_for(3)
    agree = 0
    for seed in range(1000):
        n = int(rng.integers(1, 4))
        p = float(rng.choice([0.2, 0.4, 0.6]))
        family = random_family(n, [n] * 3, p, seed=seed)
        direct = rainbow_matching(family) is not None
        lifted = rainbow_via_lift(family) is not None
        agree += direct == lifted == rainbow_exists(family, n)
    report(3, "lift equivalence", agree == 1000, f"{agree}/1000 families agree",
           time.perf_counter() - start, 60)


def test_c04_lp_duality(report):
    start = time.perf_counter()
    rng = rng_for(4)
    good = 0
    for _ in range(500):
        k = int(rng.integers(2, 4))
        sizes = [int(x) for x in rng.integers(2, 60 // k + 1, size=k)]
        p = min(1.0, 3 * sum(sizes) / float(np.prod(sizes)))
        H = random_hypergraph(sizes, p, rng=rng)
        f, w = matching_and_cover(H)
        good += (f.size == w.size and f.is_fractional_matching(H) and w.covers(H)
                 and not complementary_slackness(H, f, w))
    report(4, "LP duality", good == 500, f"{good}/500 exact nu_f = mu_f with slackness",
           time.perf_counter() - start, 120)


def test_c05_fpm_support_bound(report):
    start = time.perf_counter()
    rng = rng_for(5)
    found = within = 0
    while found < 100:
        n = int(rng.integers(2, 11))
        H = random_hypergraph([n] * 4, min(1.0, 6 / n ** 3), rng=rng)
        f = sparse_fpm(H)
        if f is None:
            continue
        found += 1
        within += f.is_perfect(H) and len(f.support) <= 4 * n
    report(5, "FPM support", within == 100, f"{within}/100 FPMs with support <= 4n",
           time.perf_counter() - start, 60)


def test_c06_edge_disjoint_fpms(report):
    start = time.perf_counter()
    ok = True
    details = []
    for n in (3, 4):
        H = complete([n] * 4)
        fpms, rep = edge_disjoint_fpm(H, n)
        supports = [f.support for f in fpms]
        disjoint = all(a.isdisjoint(b) for a, b in itertools.combinations(supports, 2))
        peak = max(pair_loads(fpms).values())
        ok &= len(fpms) == n and disjoint and all(f.is_perfect(H) for f in fpms) and peak <= 3
        details.append(f"n={n}: {len(fpms)} FPMs, max pair load {float(peak):.3f}")
    report(6, "edge-disjoint FPMs", ok, "; ".join(details), time.perf_counter() - start, 60)


def _pair_instance(rng):
    while True:
        sizes = [int(x) for x in rng.integers(2, 5, size=3)]
        if 2 * max(sizes) <= 3 * min(sizes):
            break
    p = float(rng.choice([0.02, 0.05, 0.1, 0.2, 0.4]))
    F1 = random_hypergraph(sizes, p, min_degree=2, rng=rng)
    F2 = random_hypergraph(sizes, p, min_degree=2, rng=rng)
    return F1, F2


def test_c07_size_two_rainbow_matchings(report, tmp_path):
    start = time.perf_counter()
    rng = rng_for(7)
    counter = []
    for i in range(10_000):
        F1, F2 = _pair_instance(rng)
        assert min_l_degree(F1, 1) >= 2 and min_l_degree(F2, 1) >= 2
        if rainbow_matching([F1, F2], 2) is None:
            assert not rainbow_exists([F1, F2], 2)  # the oracle agrees: a genuine counterexample
            counter.append({"sample": i, "class_sizes": list(F1.class_sizes),
                            "F1": [" ".join(map(str, e)) for e in F1.sorted_edges()],
                            "F2": [" ".join(map(str, e)) for e in F2.sorted_edges()]})
    if counter:
        dump = tmp_path / "size_two_counterexamples.json"
        dump.write_text(json.dumps(counter, indent=2))
        print(f"counterexamples written to {dump}")
        print(json.dumps(counter[:3], indent=2))
    found = 10_000 - len(counter)
    report(7, "size-2 rainbow matchings", not counter,
           f"{found}/10000 found, {len(counter)} counterexamples", time.perf_counter() - start,
           120)


def test_c08_graph_matching_oracles(report):
    start = time.perf_counter()
    rng = rng_for(8)
    ground = list(itertools.combinations(range(8), 2))
    masks = rng.integers(0, 1 << len(ground), size=100_000)
    mismatches = 0
    for mask in masks:
        mask = int(mask)
        pairs = [ground[j] for j in range(len(ground)) if mask >> j & 1]
        size = sum(1 for v, m in enumerate(blossom_pairs(8, pairs)) if m > v)
        if size != brute_force_pairs(8, pairs):
            mismatches += 1
        S, odd, deficiency = tutte_berge_pairs(8, pairs)
        if 8 - deficiency != 2 * size or odd - len(S) != deficiency:
            mismatches += 1
        bip = [(a, b) for a, b in pairs if a < 4 <= b]
        G = KPartiteHypergraph([4, 4], [((1, a + 1), (2, b - 3)) for a, b in bip], 2)
        if len(konig_min_cover(G)) != sum(1 for v, m in enumerate(blossom_pairs(8, bip)) if m > v):
            mismatches += 1
    # an independent recursion double-checks a slice of the sample
    for mask in masks[:2000]:
        pairs = [ground[j] for j in range(len(ground)) if int(mask) >> j & 1]
        if graph_matching_number(8, pairs) != brute_force_pairs(8, pairs):
            mismatches += 1
    report(8, "graph oracles", mismatches == 0, f"{mismatches} mismatches over 100000 graphs",
           time.perf_counter() - start, 300)


def test_c09_sparsifier_statistics(report):
    start = time.perf_counter()
    H = complete([6] * 4)
    fpms, _ = edge_disjoint_fpm(H, 5)
    bound = 5 * max(pair_loads(fpms).values())
    means, worst_codegree = [], 0
    for seed in range(1000):
        F, profile = sparsify(H, fpms, seed=seed)
        means.append(F.degrees().mean())
        codeg: dict = {}
        for e in F.edges:
            for pair in itertools.combinations(e, 2):
                codeg[pair] = codeg.get(pair, 0) + 1
        worst_codegree = max([worst_codegree, *codeg.values()])
    mean = float(np.mean(means))
    ok = len(fpms) == 5 and 4.5 <= mean <= 5.5 and worst_codegree <= bound
    report(9, "sparsifier", ok, f"mean degree {mean:.4f}, max codegree {worst_codegree} "
           f"<= {float(bound):.2f}", time.perf_counter() - start, 60)


def test_c10_nibble_cover(report):
    start = time.perf_counter()
    n = 16
    H = complete([n] * 4)
    small_cover = big_matching = 0
    for seed in range(100):
        res = nibble_cover(H, seed=seed)
        used: set = set()
        valid = True
        for e in res.matching:
            valid &= used.isdisjoint(e) and e in H.edges
            used |= set(e)
        small_cover += len(res.cover) <= 1.5 * n
        big_matching += valid and len(res.matching) >= 0.5 * n
    ok = small_cover >= 90 and big_matching >= 90
    report(10, "nibble cover", ok, f"cover <= 1.5n in {small_cover}/100, valid matching "
           f">= 0.5n in {big_matching}/100", time.perf_counter() - start, 120)


def test_c11_absorbing_verifier(report):
    start = time.perf_counter()
    H = complete([3] * 4)
    edges = H.sorted_edges()
    candidates = [Matching(()), Matching((edges[0],)),
                  Matching((edges[0], edges[-1]))]
    agree = 0
    for M in candidates:
        covered = set(v for e in M for v in e)
        expected = all(has_perfect_matching_on(H.edges, set(S) | covered)
                       for S in balanced_sets(_free_by_class(H, M), 4, 4))
        agree += verify_absorbing(H, M, 4)[0] == expected
    lone = Vertex(1, 3)
    G = H.with_edges(e for e in H.edges if lone not in e)
    M = Matching(((Vertex(1, 1), Vertex(2, 1), Vertex(3, 1), Vertex(4, 1)),))
    ok_g, S = verify_absorbing(G, M, 4)
    rejected = (not ok_g and lone in S
                and not has_perfect_matching_on(G.edges, set(S) | set(M.edges[0])))
    ok = agree == len(candidates) and rejected
    report(11, "absorbing verifier", ok, f"{agree}/{len(candidates)} matchings agree with "
           f"enumeration, isolated vertex rejected: {rejected}", time.perf_counter() - start, 30)


def _rml(args, cwd):
    proc = subprocess.run([sys.executable, "-m", "rainbowlab.lab.cli", *map(str, args)],
                          cwd=cwd, capture_output=True, check=True, timeout=600)
    return proc.stdout


def test_c12_determinism(report, tmp_path):
    start = time.perf_counter()
    fam = tmp_path / "fam"
    _rml(["gen", "random", "--n", 4, "--p", 0.6, "--count", 4, "--seed", 12, "--out", fam],
         tmp_path)
    inst = tmp_path / "k.txt"
    _rml(["gen", "random", "--n", 6, "--k", 4, "--p", 0.5, "--min-degree", 1, "--seed", 3,
          "--out", inst], tmp_path)
    commands = [
        ["sweep", "extremal", "--n", "3..5"],
        ["sweep", "duality", "--n", "3,4", "--seeds", "0..9"],
        ["sweep", "lift", "--n", "3", "--seeds", "0..9"],
        ["pipeline", fam, "--seed", 5],
        ["lp", inst],
        ["cover", inst, "--seed", 9],
        ["sparsify", inst, "--t", 2, "--seed", 4],
        ["closeness", fam / "F01.txt", "--d", "1,1,1"],
    ]
    same = sum(_rml(c, tmp_path) == _rml(c, tmp_path) for c in commands)
    report(12, "determinism", same == len(commands),
           f"{same}/{len(commands)} commands byte-identical on repeat",
           time.perf_counter() - start, 600)
