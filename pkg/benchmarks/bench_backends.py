#!/usr/bin/env python3
"""Timing comparison of the compiled and pure-Python kernel backends.

Runs identical workloads against spontrad._kernels (Cython, if built) and
spontrad._kernels_py, checks that the outputs agree bit-for-bit, and prints
a per-kernel table.  Usage:  python benchmarks/bench_backends.py [repeats]
"""

import sys
import time


def _load_backends():
    backends = []
    try:
        from spontrad import _kernels
        backends.append(("compiled", _kernels))
    except ImportError:
        print("note: compiled extension not built; benchmarking pure Python only")
    from spontrad import _kernels_py
    backends.append(("python", _kernels_py))
    return backends


def _time(fn, repeats):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def workload_reg_inc_gamma(mod):
    def run():
        acc = 0.0
        for s in (0.7, 1.0, 10.0, 131.0, 500.0):
            for i in range(400):
                acc += mod.reg_inc_gamma(s, 0.01 + i * (2.0 * s / 400.0))
        return acc
    return run


def workload_gamma_quantile(mod):
    def run():
        acc = 0.0
        for s in (1.0, 10.0, 131.0, 500.0):
            for i in range(200):
                acc += mod.gamma_quantile(s, i / 200.0)
        return acc
    return run


def workload_normal_quantile(mod):
    def run():
        acc = 0.0
        for i in range(1, 20000):
            acc += mod.normal_quantile(i / 20000.0)
        return acc
    return run


def workload_poisson_small(mod):
    def run():
        rng = mod.Rng(20260823)
        return sum(rng.poisson(7.67) for _ in range(100000))
    return run


def workload_poisson_large(mod):
    def run():
        rng = mod.Rng(20260823)
        return sum(rng.poisson(115.0) for _ in range(100000))
    return run


def workload_uniform(mod):
    def run():
        rng = mod.Rng(99)
        acc = 0.0
        for _ in range(200000):
            acc += rng.uniform()
        return acc
    return run


WORKLOADS = [
    ("reg_inc_gamma (2k evals)", workload_reg_inc_gamma),
    ("gamma_quantile (800 evals)", workload_gamma_quantile),
    ("normal_quantile (20k evals)", workload_normal_quantile),
    ("poisson mean=7.67 (100k)", workload_poisson_small),
    ("poisson mean=115 (100k)", workload_poisson_large),
    ("uniform (200k)", workload_uniform),
]


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    backends = _load_backends()
    print(f"{'workload':<30}" + "".join(f"{name:>12}" for name, _ in backends)
          + ("     speedup" if len(backends) == 2 else ""))
    for label, make in WORKLOADS:
        times = []
        results = []
        for _, mod in backends:
            best, result = _time(make(mod), repeats)
            times.append(best)
            results.append(result)
        if len(set(repr(r) for r in results)) != 1:
            raise SystemExit(f"backend disagreement in {label}: {results}")
        row = f"{label:<30}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:>11.1f}x"
        print(row)
    print("all workloads returned identical results across backends")


if __name__ == "__main__":
    main()
