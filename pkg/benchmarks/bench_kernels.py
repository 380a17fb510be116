"""Compare the compiled and pure-Python kernel backends.

Each backend runs in its own interpreter because the choice is made at
import time.  Usage: ``python benchmarks/bench_kernels.py [--repeat N]``.
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, sys, time
from mjsingular import kernels
from mjsingular.groebner import Ideal, groebner_basis, tangent_cone
from mjsingular.jets import jet_fiber_dim
from mjsingular.parser import parse_poly

repeat = int(sys.argv[1])
V = ("x1", "x2", "x3", "x4", "x5", "x6")
terminal = Ideal([parse_poly(s, V) for s in
                  ("x3*x4 - x5*x6", "x1*x2 - x4^5", "x1*x3^3 - x5^5", "x2*x3^2 - x6^5")], V)
C = V[:5]
cyclic = Ideal([parse_poly(s, C) for s in
                ("x1+x2+x3+x4+x5", "x1*x2+x2*x3+x3*x4+x4*x5+x5*x1",
                 "x1*x2*x3+x2*x3*x4+x3*x4*x5+x4*x5*x1+x5*x1*x2",
                 "x1*x2*x3*x4+x2*x3*x4*x5+x3*x4*x5*x1+x4*x5*x1*x2+x5*x1*x2*x3",
                 "x1*x2*x3*x4*x5-1")], C)
rng = random.Random(0)
def rand_terms(n, k, d):
    out = {}
    for _ in range(k):
        m = tuple(rng.randint(0, d) for _ in range(n))
        out[m] = out.get(m, 0) + rng.randint(-9, 9) or 1
    return out
a, b = rand_terms(6, 60, 4), rand_terms(6, 60, 4)

def timed(fn):
    best = None
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best

res = {
    "backend": kernels.BACKEND,
    "groebner_cyclic5": timed(lambda: groebner_basis(cyclic)),
    "tangent_cone_terminal": timed(lambda: tangent_cone(terminal)),
    "jet_fiber_dim_terminal_l3": timed(lambda: jet_fiber_dim(terminal, 3)),
    "mul_terms_60x60": timed(lambda: [kernels.mul_terms(a, b) for _ in range(20)]),
    "mul_terms_trunc": timed(lambda: [kernels.mul_terms(a, b, 8) for _ in range(20)]),
}
print(json.dumps(res))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ, MJ_SINGULAR_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", WORKLOAD, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if fast["backend"] != "cython":
        print("compiled extension not built; both runs use the Python fallback")
    print(f"{'workload':28s} {fast['backend']:>10s} {'python':>10s} {'speedup':>8s}")
    for key in fast:
        if key == "backend":
            continue
        print(f"{key:28s} {fast[key]:10.4f} {slow[key]:10.4f} {slow[key] / fast[key]:8.2f}x")


if __name__ == "__main__":
    main()
