"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Micro benchmarks call both backends in one process.  The end-to-end rows
rerun a workload in a subprocess with and without TORICGKZ_PURE_PYTHON, since
the backend is fixed at import.
"""

import argparse
import os
import random
import subprocess
import sys
import time

from toricgkz import _kernels_py, kernels
from toricgkz.binomial import Configuration, TermOrder, groebner_elements, toric_ideal
from toricgkz.polyhedra import IneqSystem, enumerate_lattice_points

A8 = [[1, 1, 1, 1, 1, 1], [1, 2, 1, 2, 3, 0], [0, 2, 2, 0, 1, 1]]

WORKLOADS = {
    "toric ideal 3x7": "toric_ideal(Configuration([[1]*7, [0,1,2,3,0,1,4], [0,0,1,1,3,2,2]]))",
    "rank certificate, 3x6 example": "rank_certificate(Configuration(%r))" % (A8,),
}
PRELUDE = ("from toricgkz.binomial import Configuration, toric_ideal;"
           "from toricgkz.certificate import rank_certificate;import time;t=time.perf_counter();")


def best_of(fn, repeat):
    out = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out = min(out, time.perf_counter() - t)
    return out


def reducer_workload(cls):
    cfg = Configuration(A8)
    G = groebner_elements(toric_ideal(cfg), TermOrder.grevlex(cfg.n))
    rng = random.Random(0)
    us = [tuple(rng.randint(0, 6) for _ in range(cfg.n)) for _ in range(3000)]

    def run():
        r = cls(cfg.n)
        for lead, tail in G:
            r.add(lead, tail)
        for u in us:
            r.reduce(u)
    return run


def lattice_workload(backend):
    S = IneqSystem.from_rows([[1, 2, -1], [-2, 1, 1], [0, -1, 3], [1, 1, 1]], [30, 25, 28, 40]).box(20)
    return lambda: enumerate_lattice_points(S, backend=backend)


def end_to_end(stmt, pure, repeat):
    env = dict(os.environ)
    if pure:
        env["TORICGKZ_PURE_PYTHON"] = "1"
    else:
        env.pop("TORICGKZ_PURE_PYTHON", None)
    code = PRELUDE + stmt + ";print(time.perf_counter()-t)"
    times = []
    for _ in range(repeat):
        p = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        times.append(float(p.stdout.split()[-1]))
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels._compiled is None:
        print("compiled kernels are not built; nothing to compare")
        return 1
    rows = [
        ("reduce 3000 monomials", best_of(reducer_workload(kernels._compiled.MonomialReducer), args.repeat),
         best_of(reducer_workload(_kernels_py.MonomialReducer), args.repeat)),
        ("lattice points in a 3-d polytope", best_of(lattice_workload(None), args.repeat),
         best_of(lattice_workload("python"), args.repeat)),
    ]
    for name, stmt in WORKLOADS.items():
        rows.append((name, end_to_end(stmt, False, args.repeat), end_to_end(stmt, True, args.repeat)))
    print(f"{'workload':36} {'cython':>10} {'python':>10} {'speedup':>8}")
    for name, c, p in rows:
        print(f"{name:36} {c:10.4f} {p:10.4f} {p / c:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
