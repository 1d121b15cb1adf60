"""The pure-Python kernels and the compiled kernels must produce identical chains."""

import os
import subprocess
import sys

import densest

SCRIPT = """
import sys
from densest import SaaConfig, SamplerConfig, planted_instance, run_chain, backend
from densest.harness import brute_force_densest
print(backend())
inst = planted_instance(40, 0.1, 5, 3)
for algo in ("SM", "SA", "SAA"):
    trace, state = run_chain(inst.graph, SamplerConfig(algo, 5, 300, seed=11), SaaConfig())
    sys.stdout.write(trace.to_csv())
    print(state.best, repr(state.best_density))
print(brute_force_densest(inst.graph, 4))
"""


def run_with(flag):
    env = dict(os.environ)
    env.pop("DENSEST_DISABLE_NUMBA", None)
    if flag:
        env["DENSEST_DISABLE_NUMBA"] = "1"
    r = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True,
                       check=True)
    head, _, body = r.stdout.partition("\n")
    return head, body


def test_fallback_matches_compiled_byte_for_byte():
    jit_name, jit_out = run_with(False)
    py_name, py_out = run_with(True)
    assert py_name == "python"
    if densest.USING_NUMBA:
        assert jit_name == "numba"
    assert jit_out == py_out
    assert jit_out.count("iteration,density") == 3
