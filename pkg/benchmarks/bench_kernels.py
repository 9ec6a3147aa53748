"""Compiled vs pure-Python kernel timings.

The package selects its kernel backend at import time (G3CHABAUTY_KERNELS),
so each backend runs in its own subprocess and the parent prints the
side-by-side table.  Workloads mirror the hot paths: dense polynomial
arithmetic behind the Frobenius lift, point enumeration and counting
behind zeta certification, and the rational point search.

    python3 benchmarks/bench_kernels.py
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time


def timed(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_workloads():
    from g3chabauty import _kernels as K

    rng = random.Random(42)
    mod = 7 ** 24
    a = [rng.randrange(mod) for _ in range(400)]
    b = [rng.randrange(mod) for _ in range(400)]
    big = [rng.randrange(mod) for _ in range(800)] + [1]
    monic = [rng.randrange(mod) for _ in range(400)] + [1]
    poly = [rng.randrange(11 ** 26) for _ in range(600)]
    xs = [rng.randrange(11 ** 26) for _ in range(400)]
    # monic model of y^2 = -4x^7 + ... + 1 reduced mod 31
    fbar31 = [16, 16, 7, 25, 9, 28, 17, 1]
    gnum = [1, -8, 28, -56, 72, -56, 24, -4]

    results = {}
    results["poly_mul_mod  deg 400 x 400"] = timed(
        lambda: [K.poly_mul_mod(a, b, mod) for _ in range(10)])
    results["poly_divmod   deg 800 / 400"] = timed(
        lambda: [K.poly_divmod_monic_mod(big, monic, mod) for _ in range(10)])
    results["poly_eval_mod deg 600 x 400"] = timed(
        lambda: [K.poly_eval_mod(poly, x, 11 ** 26) for x in xs])
    results["fp_points     p = 10007"] = timed(
        lambda: K.fp_curve_points(fbar31, 10007))
    results["count GF(31^3)"] = timed(
        lambda: K.count_points_gf(fbar31, 31, 3, [3, 1, 0]))
    results["point search  height 2000"] = timed(
        lambda: K.search_x_squares(gnum, 1, 2000))
    return K.BACKEND, results


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--worker", choices=["c", "py"],
                        help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        backend, results = run_workloads()
        print(json.dumps({"backend": backend, "results": results}))
        return

    runs = {}
    for choice in ("c", "py"):
        env = dict(os.environ, G3CHABAUTY_KERNELS=choice)
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker", choice],
            env=env, capture_output=True, text=True, check=True)
        runs[choice] = json.loads(out.stdout)

    print("backends: c=%s  py=%s" % (runs["c"]["backend"],
                                     runs["py"]["backend"]))
    print("%-28s %10s %10s %8s" % ("workload", "compiled", "pure", "speedup"))
    for name, tc in runs["c"]["results"].items():
        tp = runs["py"]["results"][name]
        print("%-28s %9.3fs %9.3fs %7.1fx" % (name, tc, tp, tp / tc))


if __name__ == "__main__":
    main()
