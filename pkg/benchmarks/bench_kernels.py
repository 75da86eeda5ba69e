"""Time the hot kernels under numba and under the plain-Python fallback.

Each backend runs in its own interpreter because the choice is made at
import time from ``RESPECTCUT_DISABLE_NUMBA``. The numba timings exclude
compilation (one warm-up call first).

    python benchmarks/bench_kernels.py [--repeat 3] [--scale 1.0]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from respectcut import _accel
from respectcut.baselines import stoer_wagner
from respectcut.generators import random_graph
from respectcut.graph import normalize_and_round
from respectcut.packing import pack
from respectcut.respect import min_2respect
from respectcut.sampler import binomial_samples
from respectcut.spanning_tree import RootedTree, kruskal_order

scale, repeat = float(sys.argv[1]), int(sys.argv[2])
n_sweep = max(16, int(512 * scale))
n_pack = max(8, int(48 * scale))
n_sw = max(8, int(96 * scale))

g = random_graph(n_sweep, m=4 * n_sweep, weights="1:100", seed=0)
ids = kruskal_order(g.n, g.u, g.v, np.random.default_rng(0).permutation(g.m))
tree = RootedTree.from_edge_ids(g.n, g.u, g.v, g.w, ids)
h = normalize_and_round(random_graph(n_pack, m=3 * n_pack, weights="1:4", seed=1), 1)
gs = random_graph(n_sw, p=0.2, weights="1:9", seed=2)
trials = np.full(20000, 300)

cases = {
    f"min_2respect n={n_sweep}": lambda: min_2respect(g, tree),
    f"pack n={n_pack}": lambda: pack(h, 0.3, keep_trees=False),
    f"stoer_wagner n={n_sw}": lambda: stoer_wagner(gs),
    "binomial 20000 draws": lambda: binomial_samples(trials, 0.2, 400, np.random.default_rng(3)),
}
out = {"backend": _accel.BACKEND, "times": {}}
for name, fn in cases.items():
    fn()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    out["times"][name] = best
print(json.dumps(out))
"""


def run(disable: bool, scale: float, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("RESPECTCUT_DISABLE_NUMBA", None)
    if disable:
        env["RESPECTCUT_DISABLE_NUMBA"] = "1"
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, str(scale), str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--scale", type=float, default=1.0, help="multiplies the problem sizes")
    args = ap.parse_args()
    fast = run(False, args.scale, args.repeat)
    slow = run(True, args.scale, args.repeat)
    print(f"{'kernel':<28}{fast['backend']:>12}{slow['backend']:>12}{'speedup':>10}")
    for name, t_fast in fast["times"].items():
        t_slow = slow["times"][name]
        print(f"{name:<28}{t_fast * 1e3:>10.2f}ms{t_slow * 1e3:>10.2f}ms{t_slow / t_fast:>9.1f}x")


if __name__ == "__main__":
    main()
