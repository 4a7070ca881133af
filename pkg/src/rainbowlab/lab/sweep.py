"""Experiment sweeps that write one CSV row per instance.

Rows come out in task order whatever order the workers finish in.  Wall
clock times are only recorded on request, so by default the same arguments
give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from rainbowlab.constructions import build_balanced, d3_threshold
from rainbowlab.core import InputError, ResourceError, min_l_degree
from rainbowlab.fractional.lp import complementary_slackness, matching_and_cover
from rainbowlab.lab.generators import random_family, random_hypergraph, rng_for
from rainbowlab.solvers.hypergraph import has_perfect_matching, rainbow_matching
from rainbowlab.constructions import lift_family

SCHEMA_VERSION = 1
KINDS = ("extremal", "duality", "threshold", "lift")


@dataclass
class ExperimentRow:
    schema: int
    instance_id: str
    kind: str
    params: str
    solver: str
    answer: str
    witness_size: str
    runtime_ms: str
    seed: int


COLUMNS = [f.name for f in fields(ExperimentRow)]


def parse_range(text: str | None) -> list[int]:
    """``"3..5"`` or ``"3,4,7"`` or ``"4"``; a reversed range is empty."""
    if text is None or text == "":
        return []
    out = []
    for part in text.split(","):
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def tasks_for(kind: str, ns, ms, seeds) -> list[tuple]:
    if kind not in KINDS:
        raise InputError(f"unknown sweep kind {kind!r}; choose from {', '.join(KINDS)}")
    if kind == "extremal":
        return [(kind, n, n - 1, 0) for n in ns]
    if kind == "threshold":
        return [(kind, n, m, 0) for n in ns for m in (ms or range(n + 1)) if 0 <= m <= n]
    return [(kind, n, 0, s) for n in ns for s in seeds]


def _instance_id(kind, n, m, seed) -> str:
    return f"{kind}-n{n}-m{m}-s{seed}"


def run_task(task: tuple, budget_ms: float | None = None, timing: bool = False) -> ExperimentRow:
    kind, n, m, seed = task
    start = time.perf_counter()
    params, solver, answer, size = f"n={n};m={m}", "", "", ""
    try:
        if kind == "extremal":
            F = build_balanced(n, m)
            solver = "exact-rainbow"
            found = rainbow_matching([F] * n, budget_ms=budget_ms)
            answer = "NO-RAINBOW-PM" if found is None else "RAINBOW-PM"
            size = "" if found is None else str(len(found))
        elif kind == "threshold":
            solver = "brute-min-degree"
            got = min_l_degree(build_balanced(n, m), 1)
            want = d3_threshold(n, m)
            answer = "MATCH" if got == want else "MISMATCH"
            size = str(got)
        elif kind == "duality":
            rng = rng_for(seed)
            sizes = [int(x) for x in rng.integers(2, max(3, n) + 1, size=3)]
            params = f"sizes={'x'.join(map(str, sizes))};p=0.5"
            H = random_hypergraph(sizes, 0.5, rng=rng)
            solver = "exact-simplex"
            f, w = matching_and_cover(H)
            ok = f.size == w.size and w.covers(H) and not complementary_slackness(H, f, w)
            answer = "EQUAL" if ok else "MISMATCH"
            size = str(f.size)
        elif kind == "lift":
            params = f"n={n};p=0.4"
            F = random_family(n, [n] * 3, 0.4, seed=seed)
            solver = "exact-rainbow+lift"
            a = rainbow_matching(F, budget_ms=budget_ms) is not None
            b, _ = has_perfect_matching(lift_family(F), budget_ms=budget_ms)
            answer = ("AGREE-" + ("YES" if a else "NO")) if a == b else "DISAGREE"
            size = str(n if a else 0)
    except ResourceError:
        answer = "TIMEOUT"
    elapsed = f"{(time.perf_counter() - start) * 1000:.1f}" if timing else ""
    return ExperimentRow(SCHEMA_VERSION, _instance_id(kind, n, m, seed), kind, params, solver,
                         answer, size, elapsed, seed)


def _worker(args):
    task, budget_ms, timing = args
    return run_task(task, budget_ms, timing)


def worker_count() -> int:
    cap = int(os.environ.get("RML_THREADS", "0") or 0)
    cpus = os.cpu_count() or 1
    return max(1, min(cap, cpus) if cap > 0 else cpus)


def _load_checkpoint(path: Path | None) -> dict:
    done = {}
    if path is not None and path.exists():
        for line in path.read_text().splitlines():
            if line.strip():
                row = ExperimentRow(**json.loads(line))
                done[row.instance_id] = row
    return done


def run_sweep(kind: str, ns, ms=(), seeds=(), budget_ms: float | None = None,
              checkpoint: str | os.PathLike | None = None, timing: bool = False,
              workers: int | None = None) -> list[ExperimentRow]:
    tasks = tasks_for(kind, ns, ms, seeds)
    ckpt = Path(checkpoint) if checkpoint else None
    done = _load_checkpoint(ckpt)
    todo = [t for t in tasks if _instance_id(*t) not in done]
    workers = worker_count() if workers is None else workers
    results = {}
    sink = ckpt.open("a") if ckpt else None
    try:
        if workers > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                rows = pool.map(_worker, [(t, budget_ms, timing) for t in todo])
                for row in rows:
                    results[row.instance_id] = row
                    if sink:
                        sink.write(json.dumps(asdict(row), sort_keys=True) + "\n")
                        sink.flush()
        else:
            for t in todo:
                row = run_task(t, budget_ms, timing)
                results[row.instance_id] = row
                if sink:
                    sink.write(json.dumps(asdict(row), sort_keys=True) + "\n")
                    sink.flush()
    finally:
        if sink:
            sink.close()
    results.update(done)
    return [results[_instance_id(*t)] for t in tasks]


def to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([getattr(r, c) for c in COLUMNS])
    return buf.getvalue()
