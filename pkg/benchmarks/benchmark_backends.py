"""Throughput comparison: numba kernels vs the pure-Python backend.

Runs the same seeded workloads through both paths (results are bit-identical;
only speed differs) and prints per-workload timings with the speedup factor.

    python benchmarks/benchmark_backends.py [--sims 2000] [--census-samples 300]
"""

import argparse
import time

from nksim import ExperimentConfig, SearchStrategy, Stream, itdc_weights
from nksim import kernels, run_experiment, sample_census_stats


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sims", type=int, default=2000,
                        help="simulations per run in the walk workloads")
    parser.add_argument("--census-samples", type=int, default=300,
                        help="landscapes in the census workload")
    parser.add_argument("--repeat", type=int, default=3, help="timing repeats (best-of)")
    args = parser.parse_args()

    if not kernels.NUMBA_AVAILABLE:
        print("numba is not importable; nothing to compare against")
        return 1

    walk_cfg = ExperimentConfig(k_values=(0, 1, 2, 3, 4), runs=1,
                                sims_per_run=args.sims, master_seed=7)
    jump_cfg = ExperimentConfig(k_values=(2,), runs=1, sims_per_run=args.sims,
                                strategy=SearchStrategy(kind="long_jump", jump_width=5),
                                master_seed=7)
    workloads = [
        (f"first-improvement study ({5 * args.sims} walks)",
         lambda b: run_experiment(walk_cfg, backend=b)),
        (f"long-jump study ({args.sims} walks, 500-eval budget)",
         lambda b: run_experiment(jump_cfg, backend=b)),
        (f"census sampling ({args.census_samples} landscapes, n=5, k=4)",
         lambda b: sample_census_stats(5, 4, itdc_weights(), "random",
                                       args.census_samples, Stream(7), backend=b)),
    ]

    print(f"{'workload':<55} {'numba':>10} {'python':>10} {'speedup':>9}")
    for name, call in workloads:
        call("numba")  # warm the JIT cache before timing
        t_numba = best_of(lambda: call("numba"), args.repeat)
        t_python = best_of(lambda: call("python"), max(1, args.repeat - 2))
        print(f"{name:<55} {t_numba:>9.3f}s {t_python:>9.3f}s {t_python / t_numba:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
