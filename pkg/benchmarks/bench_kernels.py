#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the pure-Python fallback.

Times the four hot kernels on workloads shaped like the real pipeline
(61-observation regressions, 793-value normality statistics, tail and
quantile evaluations from the inference and scoring loops) and, optionally,
the full seeded recovery experiment end to end in a subprocess per backend.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--end-to-end]
"""

import argparse
import subprocess
import sys
import time

import numpy as np

from inertia._kernels import available_backends, load_backend


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(backend, repeat):
    rng = np.random.default_rng(0)
    ts = rng.uniform(-6.0, 6.0, 20000)
    dfs = rng.integers(1, 200, 20000)
    ps = rng.uniform(1e-9, 1.0 - 1e-9, 50000)
    xs = np.arange(61.0)
    ys = 300.0 * xs + rng.standard_normal(61) * 250.0
    sample = np.sort(rng.standard_normal(793))

    def run_t_sf():
        f = backend.t_sf_two_sided
        for t, df in zip(ts, dfs):
            f(t, df)

    def run_quantile():
        f = backend.norm_quantile
        for p in ps:
            f(p)

    def run_ols():
        f = backend.ols_core
        for _ in range(20000):
            f(xs, ys)

    def run_sf():
        f = backend.sf_wstat
        for _ in range(200):
            f(sample)

    return {
        "t_sf_two_sided x20k": timeit(run_t_sf, repeat),
        "norm_quantile x50k": timeit(run_quantile, repeat),
        "ols_core(n=61) x20k": timeit(run_ols, repeat),
        "sf_wstat(n=793) x200": timeit(run_sf, repeat),
    }


def bench_end_to_end(backend_name):
    code = (
        "import time\n"
        "from inertia import model\n"
        "p = model.ModelParams(A=300.0, C=3000.0, t0=1950)\n"
        "t0 = time.perf_counter()\n"
        "model.run_recovery(p, steps=61, noise_sigma=250.0, n_trials=500)\n"
        "print(time.perf_counter() - t0)\n"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"INERTIA_KERNELS": backend_name, "PATH": "/usr/bin:/bin"},
        capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--end-to-end", action="store_true",
                    help="also time run_recovery(500 trials) per backend "
                         "in a fresh interpreter")
    args = ap.parse_args()

    names = available_backends()
    results = {name: bench_backend(load_backend(name), args.repeat)
               for name in names}
    if args.end_to_end:
        for name in names:
            results[name]["recovery(500 trials)"] = bench_end_to_end(name)

    kernels = list(results[names[0]])
    width = max(len(k) for k in kernels) + 2
    header = f"{'kernel':<{width}}" + "".join(f"{n:>12}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for kernel in kernels:
        row = f"{kernel:<{width}}"
        for name in names:
            row += f"{results[name][kernel] * 1e3:>10.1f}ms"
        if len(names) == 2:
            ratio = results["pure"][kernel] / results["fast"][kernel]
            row += f"{ratio:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
