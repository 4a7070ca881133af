"""Time the hot kernels compiled (RML_NUMBA=1) against the pure-Python path (RML_NUMBA=0).

Each mode runs in its own interpreter because the flag is read at import
time.  The first call of every workload is a warm-up (it includes JIT
compilation in the compiled mode) and is reported separately.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
from rainbowlab import _kernels as K
from rainbowlab.constructions import build_balanced
from rainbowlab.core import complete
from rainbowlab.lab.generators import random_hypergraph
from rainbowlab.solvers import rainbow_matching, nu, brute_force_matching_size, graph_from_pairs
from rainbowlab.structure import nibble_cover

quick = sys.argv[2] == "1"
n_ext = 4 if quick else 5
G_pairs = [(i, j) for i in range(14) for j in range(i + 1, 14) if (i * 7 + j * 3) % 5 < 2]

workloads = {
    "rainbow-extremal": lambda: rainbow_matching([build_balanced(n_ext, n_ext - 1)] * n_ext),
    "max-matching": lambda: nu(random_hypergraph([12 if quick else 14] * 4, 0.005 if quick else 0.004, seed=1)),
    "graph-dp": lambda: brute_force_matching_size(graph_from_pairs(14, G_pairs)),
    "nibble": lambda: nibble_cover(complete([8 if quick else 12] * 4), seed=1),
}
repeat = int(sys.argv[1])
out = {"numba": K.USE_NUMBA}
for name, fn in workloads.items():
    t0 = time.perf_counter(); fn(); warm = time.perf_counter() - t0
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter(); fn(); times.append(time.perf_counter() - t0)
    out[name] = {"warmup_s": warm, "best_s": min(times)}
print(json.dumps(out))
"""


def run_mode(flag: str, repeat: int, quick: bool) -> dict:
    env = dict(os.environ, RML_NUMBA=flag)
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat), "1" if quick else "0"],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args(argv)
    start = time.perf_counter()
    fast = run_mode("1", args.repeat, args.quick)
    slow = run_mode("0", args.repeat, args.quick)
    print(f"{'workload':<18}{'numba (s)':>12}{'pure (s)':>12}{'speedup':>10}{'jit warm-up (s)':>18}")
    for name in (k for k in fast if k != "numba"):
        a, b = fast[name]["best_s"], slow[name]["best_s"]
        print(f"{name:<18}{a:>12.4f}{b:>12.4f}{b / max(a, 1e-9):>9.1f}x{fast[name]['warmup_s']:>18.2f}")
    print(f"total wall time {time.perf_counter() - start:.1f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
