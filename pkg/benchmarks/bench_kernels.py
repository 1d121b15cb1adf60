"""Compiled vs pure-Python kernel timings.

Runs the same chains under both backends (each in its own interpreter, since
the backend is fixed at import time) and prints seconds per 1,000 iterations.

    python3 benchmarks/bench_kernels.py [--iters 2000]
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = """
import json, sys, time
from densest import SaaConfig, SamplerConfig, backend, planted_instance, run_chain
from densest.harness import brute_force_densest, warm_up

iters = int(sys.argv[1])
warm_up()
inst = planted_instance(100, 0.05, 10, 1)
out = {"backend": backend()}
for algo in ("SM", "SA", "SAA"):
    cfg = SamplerConfig(algo, 10, iters, seed=5)
    t0 = time.perf_counter()
    trace, _ = run_chain(inst.graph, cfg, SaaConfig())
    out[algo] = (time.perf_counter() - t0) * 1000 / iters
    out[algo + "_digest"] = hash(trace.to_csv())
small = planted_instance(20, 0.2, 4, 0).graph
t0 = time.perf_counter()
brute_force_densest(small, 5)
out["oracle"] = time.perf_counter() - t0
print(json.dumps(out))
"""


def measure(iters, disable):
    env = dict(os.environ, PYTHONHASHSEED="0")
    env.pop("DENSEST_DISABLE_NUMBA", None)
    if disable:
        env["DENSEST_DISABLE_NUMBA"] = "1"
    r = subprocess.run([sys.executable, "-c", CHILD, str(iters)], env=env, check=True,
                       capture_output=True, text=True)
    return json.loads(r.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--iters", type=int, default=2000, help="iterations per chain")
    args = ap.parse_args()
    fast = measure(args.iters, disable=False)
    slow = measure(args.iters, disable=True)
    print(f"{'kernel':<16}{fast['backend']:>12}{slow['backend']:>12}{'speedup':>10}")
    for key, label in (("SM", "SM /1k iters"), ("SA", "SA /1k iters"),
                       ("SAA", "SAA /1k iters"), ("oracle", "oracle C(20,5)")):
        print(f"{label:<16}{fast[key]:>12.4f}{slow[key]:>12.4f}{slow[key] / fast[key]:>9.1f}x")
    same = all(fast[a + "_digest"] == slow[a + "_digest"] for a in ("SM", "SA", "SAA"))
    print(f"identical traces: {same}")


if __name__ == "__main__":
    main()
