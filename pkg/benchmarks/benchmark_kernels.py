"""Numba vs NumPy timings for the three hot kernel families.

Each kernel runs on identical inputs under both backends; the table reports
the best wall time over the chosen repeats and the resulting speedup. The
compiled path is warmed before timing so JIT compilation stays out of the
numbers.

Usage:
    python3 benchmarks/benchmark_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from cavityshare import _kernels
from cavityshare.analysis import sweep


def best_time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def bench_propagate(backend: str, amps: np.ndarray) -> None:
    _kernels.propagate_span(
        amps, g=1.0, delta=0.5, t0=0.0, t1=4.44, dt=1e-3, backend=backend
    )


def bench_sweep(backend: str, theta: np.ndarray, tau: np.ndarray) -> None:
    sweep(theta, tau, backend=backend)


def bench_measures(backend: str, probs: np.ndarray) -> None:
    _kernels.measure_batch(probs, backend=backend)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="timing repeats")
    args = parser.parse_args()

    rng = np.random.default_rng(1234)
    amps = rng.standard_normal((64, 3)) + 1j * rng.standard_normal((64, 3))
    amps /= np.linalg.norm(amps, axis=1, keepdims=True)
    theta = np.arange(512) / 512.0
    tau = np.linspace(0.0, 4.0, 512)
    probs = np.abs(
        rng.standard_normal((1_000_000, 3)) + 1j * rng.standard_normal((1_000_000, 3))
    )
    probs /= probs.sum(axis=1, keepdims=True)

    cases = [
        ("rk4 span, 64 states x 4440 steps", lambda b: bench_propagate(b, amps)),
        ("measure surface, 512 x 512 grid", lambda b: bench_sweep(b, theta, tau)),
        ("measure batch, 1e6 states", lambda b: bench_measures(b, probs)),
    ]

    if not _kernels.HAS_NUMBA:
        print("compiled backend unavailable; timing the numpy path only")
    else:
        _kernels.warm_up()

    header = f"{'kernel':<36} {'numpy':>10} {'numba':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, runner in cases:
        t_numpy = best_time(lambda: runner("numpy"), args.repeat)
        if _kernels.HAS_NUMBA:
            t_numba = best_time(lambda: runner("numba"), args.repeat)
            ratio = t_numpy / t_numba if t_numba > 0 else float("inf")
            print(f"{label:<36} {t_numpy:>9.4f}s {t_numba:>9.4f}s {ratio:>7.1f}x")
        else:
            print(f"{label:<36} {t_numpy:>9.4f}s {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
