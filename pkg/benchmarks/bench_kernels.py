#!/usr/bin/env python3
"""Benchmark the compiled rate kernels against the pure-NumPy fallback.

Times the log-determinant kernel on representative Gram shapes (receive
dimensions x stream counts seen in practice) and, when the extension is
built, a full Monte Carlo sweep under each backend.  Backends must agree
numerically; the run aborts if they drift.

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from sdoflab import AntennaConfig, EveMode, SignalParams
from sdoflab import simulate
from sdoflab.kernels import fallback

try:
    from sdoflab.kernels import _native
except ImportError:
    _native = None


def crandn(gen, rows, cols):
    return (gen.standard_normal((rows, cols)) + 1j * gen.standard_normal((rows, cols))) / np.sqrt(2)


def time_call(fn, args, repeats):
    best = float("inf")
    for _ in range(5):
        start = time.perf_counter()
        for arg in args:
            fn(arg)
        best = min(best, (time.perf_counter() - start) / len(args))
    return best * 1e6  # microseconds per call


def bench_kernel():
    gen = np.random.default_rng(0)
    shapes = [(2, 3), (4, 6), (8, 12), (16, 24)]
    print("log2 det(I + E E^H), microseconds per call (best of 5 rounds)")
    header = f"{'shape':>10} {'fallback':>10}"
    if _native is not None:
        header += f" {'native':>10} {'speedup':>8}"
    print(header)
    for shape in shapes:
        args = [crandn(gen, *shape) for _ in range(200)]
        t_fb = time_call(fallback.logdet_eye_plus_gram, args, 200)
        line = f"{str(shape):>10} {t_fb:>10.2f}"
        if _native is not None:
            t_nat = time_call(_native.logdet_eye_plus_gram, args, 200)
            drift = max(
                abs(_native.logdet_eye_plus_gram(a) - fallback.logdet_eye_plus_gram(a))
                for a in args[:50]
            )
            assert drift < 1e-9, f"backend disagreement {drift:.2e} at {shape}"
            line += f" {t_nat:>10.2f} {t_fb / t_nat:>7.1f}x"
        print(line)
    if _native is None:
        print("(compiled kernel not built; run `python3 setup.py build_ext --inplace`)")


def bench_sweep():
    if _native is None:
        return
    config = AntennaConfig(3, 3, 4, 2)
    grid = [60.0, 70.0, 80.0, 90.0, 100.0]
    print()
    print(f"full sweep, config {config}, {len(grid)} grid points x 100 trials")
    results = {}
    original = simulate._kernels
    try:
        for name, impl in (("native", _native), ("fallback", fallback)):
            simulate._kernels = impl
            start = time.perf_counter()
            samples = simulate.sweep(
                config, SignalParams(1.0), grid, 100, 7, EveMode.TIME_VARYING
            )
            elapsed = time.perf_counter() - start
            results[name] = (elapsed, samples)
            print(f"  {name:>8}: {elapsed:.3f} s")
    finally:
        simulate._kernels = original
    drift = max(
        abs(a.legit_rate - b.legit_rate)
        for a, b in zip(results["native"][1], results["fallback"][1])
    )
    print(f"  max legit-rate drift between backends: {drift:.2e} bits")
    print(f"  sweep speedup: {results['fallback'][0] / results['native'][0]:.2f}x")


if __name__ == "__main__":
    bench_kernel()
    bench_sweep()
