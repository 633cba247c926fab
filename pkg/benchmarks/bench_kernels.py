#!/usr/bin/env python3
"""Compare the compiled polynomial kernels against the pure-Python fallback.

Runs the same exact-arithmetic workloads in two subprocesses, one with
CARTANKIT_PURE_PYTHON=1, and prints the timings side by side.

    python benchmarks/bench_kernels.py
"""

import json
import os
import random
import subprocess
import sys
import time


def workloads():
    from cartankit.scalars import Q, ScalarExpr, X
    from cartankit.fields import random_connection, random_tetrad, \
        bianchi_check, einstein_3form
    from cartankit import multisym as ms
    from cartankit.kernels import COMPILED

    results = {"compiled": COMPILED}

    rng = random.Random(0)

    def rand_poly(nterms):
        out = ScalarExpr()
        for _ in range(nterms):
            t = ScalarExpr.constant(Q(rng.randint(-9, 9), rng.randint(1, 4)))
            for _ in range(rng.randint(1, 5)):
                t = t * X[rng.randint(0, 3)]
            out = out + t
        return out

    polys = [rand_poly(30) for _ in range(40)]
    t0 = time.perf_counter()
    acc = ScalarExpr.constant(0)
    for i in range(len(polys) - 1):
        acc = acc + polys[i] * polys[i + 1]
    results["poly_mul_chain"] = time.perf_counter() - t0

    rng = random.Random(1)
    t0 = time.perf_counter()
    for _ in range(6):
        e = random_tetrad(rng, degree=2)
        a = random_connection(rng, degree=2)
        assert bianchi_check(e, a)
    results["bianchi_6_fields"] = time.perf_counter() - t0

    rng = random.Random(2)
    t0 = time.perf_counter()
    for _ in range(4):
        e = random_tetrad(rng, degree=2)
        a = random_connection(rng, degree=2)
        einstein_3form(e, a)
    results["einstein_3form_4_fields"] = time.perf_counter() - t0

    rng = random.Random(3)
    t0 = time.perf_counter()
    for _ in range(6):
        pt = ms.sample_phase_point(rng, on_manifold=False)
        ms.legendre_constraints(pt)
    results["legendre_6_points"] = time.perf_counter() - t0

    return results


def main():
    if os.environ.get("CARTANKIT_BENCH_CHILD"):
        print(json.dumps(workloads()))
        return

    rows = {}
    for label, extra_env in (("compiled", {}),
                             ("pure", {"CARTANKIT_PURE_PYTHON": "1"})):
        env = dict(os.environ, CARTANKIT_BENCH_CHILD="1", **extra_env)
        out = subprocess.run([sys.executable, __file__], env=env,
                             capture_output=True, text=True, check=True)
        rows[label] = json.loads(out.stdout)

    if not rows["compiled"]["compiled"]:
        print("note: compiled kernels unavailable; both columns are pure "
              "Python")
    names = [k for k in rows["compiled"] if k != "compiled"]
    width = max(len(n) for n in names)
    print(f"{'workload'.ljust(width)}  compiled   pure      speedup")
    for name in names:
        c = rows["compiled"][name]
        p = rows["pure"][name]
        print(f"{name.ljust(width)}  {c:7.3f}s  {p:7.3f}s  {p / c:6.2f}x")


if __name__ == "__main__":
    main()
