"""Benchmark the compiled kernels against the pure-NumPy fallback.

Shapes mirror the solver's real workloads: the pivoted QR of the
lower-right Macaulay block and the multi-RHS back-substitution of the
inverted triangular block, at bivariate degrees 10 and 20 plus a generic
rectangle.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from eigroots.kernels import available_backends

# (label, rows, cols) for pivoted QR without Q: the solver-path shape
QR_CASES = [
    ("qr  deg-10 block   70x170", 70, 170),
    ("qr  deg-20 block  380x780", 380, 780),
    ("qr  generic       200x150", 200, 150),
]

# (label, size, nrhs) for the triangular solve of step 10
SOLVE_CASES = [
    ("back-substitute  110x100", 110, 100),
    ("back-substitute  420x400", 420, 400),
]

REPEATS = 5


def best_of(fn, repeats=REPEATS):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_qr(mod, rows, cols, seed=0):
    base = np.random.default_rng(seed).standard_normal((rows, cols))

    def run():
        work = np.array(base, order="C", copy=True)
        mod.qr_inplace(work, np.empty((rows, 0)), True, False)

    return best_of(run)


def bench_solve(mod, size, nrhs, seed=0):
    rng = np.random.default_rng(seed)
    upper = np.ascontiguousarray(np.triu(rng.standard_normal((size, size))) + 4 * np.eye(size))
    rhs = rng.standard_normal((size, nrhs))

    def run():
        work = np.array(rhs, order="C", copy=True)
        mod.solve_upper_inplace(upper, work)

    return best_of(run)


def main():
    backends = available_backends()
    names = list(backends)
    print(f"backends: {', '.join(names)}  (best of {REPEATS} runs)\n")
    header = f"{'case':<28}" + "".join(f"{n:>12}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    rows = []
    for label, m, n in QR_CASES:
        rows.append((label, [bench_qr(backends[name], m, n) for name in names]))
    for label, size, nrhs in SOLVE_CASES:
        rows.append((label, [bench_solve(backends[name], size, nrhs) for name in names]))
    for label, times in rows:
        line = f"{label:<28}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            line += f"{times[0] / times[1]:>9.2f}x"
        print(line)
    if "compiled" not in backends:
        print("\ncompiled core not built; run `pip install -e .` to compare it")


if __name__ == "__main__":
    main()
