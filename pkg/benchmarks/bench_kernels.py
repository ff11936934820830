#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the NumPy fallback.

Covers the two hot paths: batched DFTs over product groups (radix-2 and
naive branches) and the trapezoid Fourier quadrature used by the affine
transforms.  Run after an editable install:

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from tauharm import _kernels

REPEATS = 5


def _best_of(fn):
    best = float("inf")
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_batch_dft(rng):
    cases = [
        ("dft radix-2      64 x 1024", (1024,), 64),
        ("dft radix-2      64 x 4096", (4096,), 64),
        ("dft naive        64 x 360", (360,), 64),
        ("dft naive        16 x 1000", (1000,), 16),
        ("dft product      64 x (8,8,8)", (8, 8, 8), 64),
    ]
    for label, divisors, rows in cases:
        n = int(np.prod(divisors))
        table = rng.standard_normal((rows, n)) + 1j * rng.standard_normal((rows, n))
        yield label, lambda t=table, d=divisors: _kernels.batch_dft(t, d)


def bench_quadrature(rng):
    grid_cases = [("quadrature       64 x 1024 -> 1024", 64, 1024, 1024)]
    for label, rows, nb, nf in grid_cases:
        nodes = np.linspace(-8.0, 8.0, nb)
        weights = np.full(nb, nodes[1] - nodes[0])
        weights[0] /= 2
        weights[-1] /= 2
        table = rng.standard_normal((rows, nb)) + 1j * rng.standard_normal((rows, nb))
        freqs = np.linspace(-8.0, 8.0, nf)[None, :] / rng.uniform(1, 2, size=(rows, 1))
        yield label, lambda t=table, n=nodes, w=weights, f=freqs: _kernels.fourier_quadrature(
            t, n, w, f, -1
        )


def main():
    backends = _kernels.available_backends()
    print(f"available backends: {', '.join(backends)}")
    if "compiled" not in backends:
        print("compiled extension not built; timing the python fallback only")
    rng = np.random.default_rng(0)
    cases = list(bench_batch_dft(rng)) + list(bench_quadrature(rng))

    header = f"{'case':<36}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    previous = _kernels.backend_name()
    try:
        for label, fn in cases:
            times = {}
            for backend in backends:
                _kernels.set_backend(backend)
                times[backend] = _best_of(fn)
            row = f"{label:<36}" + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
            if len(backends) == 2:
                row += f"{times['python'] / times['compiled']:>9.2f}x"
            print(row)
    finally:
        _kernels.set_backend(previous)


if __name__ == "__main__":
    main()
