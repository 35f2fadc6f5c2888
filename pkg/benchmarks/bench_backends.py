#!/usr/bin/env python3
"""Benchmark the JIT kernels against the plain-numpy fallback.

Runs the same workloads in two subprocesses (one per backend, selected by the
BREGOPT_DISABLE_NUMBA flag) and prints a timing table.  JIT compilation is
warmed up outside the timed sections.

Usage: python benchmarks/bench_backends.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json
import time

import numpy as np

import bregopt as bo
from bregopt.oracle import prox_oracle
from bregopt.prox import validate_catalog


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_lambert():
    z = np.logspace(-12, 12, 100_000)
    bo.lambert_w0_many(z)


def bench_numeric_prox():
    pen = bo.penalty("linear_entropy", omega=0.7)
    xi = np.linspace(0.05, 5.0, 2_000)
    for v in xi:
        bo.prox_scalar_numeric("boltzmann_shannon", pen, 1.3, float(v))


def bench_oracle():
    pen = bo.penalty("neg_root", p=0.4)
    for v in np.linspace(0.1, 4.0, 50):
        prox_oracle("boltzmann_shannon", pen, 1.0, float(v))


def bench_catalog():
    validate_catalog(draws=20, seed=42)


def bench_feasibility():
    from importlib import resources

    cfg = json.loads(
        resources.files("bregopt.problems")
        .joinpath("hyperplanes_entropic.json")
        .read_text()
    )
    problem = bo.problem_from_config(cfg)
    bo.solve_feasibility(problem)


repeat = int(json.loads(input()))

# Warm-up pass compiles everything before timing.
bench_lambert()
bench_numeric_prox()
bench_oracle()
bench_catalog()
bench_feasibility()

results = {
    "backend": bo.backend_name(),
    "lambert_w0 x 1e5": timed(bench_lambert, repeat),
    "numeric prox x 2e3": timed(bench_numeric_prox, repeat),
    "prox oracle x 50": timed(bench_oracle, repeat),
    "catalog audit (20 draws)": timed(bench_catalog, repeat),
    "entropic feasibility solve": timed(bench_feasibility, repeat),
}
print(json.dumps(results))
"""


def run_backend(disable_numba: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["BREGOPT_DISABLE_NUMBA"] = "1" if disable_numba else "0"
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD],
        input=json.dumps(repeat),
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    jit = run_backend(disable_numba=False, repeat=args.repeat)
    plain = run_backend(disable_numba=True, repeat=args.repeat)

    names = [k for k in jit if k != "backend"]
    width = max(len(n) for n in names)
    print(f"{'workload':<{width}}  {jit['backend']:>10}  {plain['backend']:>10}  speedup")
    for name in names:
        a, b = jit[name], plain[name]
        print(f"{name:<{width}}  {a:>9.4f}s  {b:>9.4f}s  {b / a:>6.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
