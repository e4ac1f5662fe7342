"""Compare the numba and numpy kernel backends on realistic workloads.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeats N] [--scale K]

Each kernel is timed over the same pre-generated inputs on both backends
after a warm-up pass, so numba JIT compilation never lands in the timed
region. Output is one table row per (kernel, backend).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from propeval import kernels


def gen_sorted_intervals(rng, n, hi, max_len):
    starts = rng.integers(0, hi, n)
    ends = starts + rng.integers(1, max_len, n)
    order = np.lexsort((ends, starts))
    return starts[order].astype(np.int64), ends[order].astype(np.int64)


def make_workloads(rng, scale):
    merge = [gen_sorted_intervals(rng, 200 * scale, 500_000, 400) for _ in range(40)]
    pair = [
        (
            *gen_sorted_intervals(rng, 40 * scale, 100_000, 300),
            *gen_sorted_intervals(rng, 40 * scale, 100_000, 300),
        )
        for _ in range(40)
    ]
    votes = [
        (100_000, *gen_sorted_intervals(rng, 60 * scale, 99_000, 500))
        for _ in range(40)
    ]
    runs = [
        (rng.integers(0, 6, 100_000 * scale), int(t)) for t in rng.integers(1, 6, 40)
    ]
    return {
        "merge_sorted_intervals": (kernels.merge_sorted_intervals, merge),
        "pair_overlap_sums": (kernels.pair_overlap_sums, pair),
        "vote_counts": (kernels.vote_counts, votes),
        "runs_at_least": (kernels.runs_at_least, runs),
    }


def time_kernel(fn, cases, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for case in cases:
            fn(*case)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5, help="timed passes per kernel")
    ap.add_argument("--scale", type=int, default=1, help="workload size multiplier")
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    workloads = make_workloads(rng, args.scale)

    results: dict[str, dict[str, float]] = {}
    for backend in ("numpy", "numba"):
        kernels.set_backend(backend)
        if kernels.active_backend() != backend:
            print(f"backend {backend} unavailable, skipping")
            continue
        for name, (fn, cases) in workloads.items():
            fn(*cases[0])  # warm-up: trigger JIT before timing
            results.setdefault(name, {})[backend] = time_kernel(
                fn, cases, args.repeats
            )

    print(f"{'kernel':<26} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9}")
    for name, times in results.items():
        np_ms = times.get("numpy", float("nan")) * 1e3
        nb_ms = times.get("numba", float("nan")) * 1e3
        ratio = np_ms / nb_ms if nb_ms and nb_ms == nb_ms else float("nan")
        print(f"{name:<26} {np_ms:>12.2f} {nb_ms:>12.2f} {ratio:>8.2f}x")


if __name__ == "__main__":
    main()
