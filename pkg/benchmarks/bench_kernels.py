"""Compare the numba and numpy kernel paths.

    python benchmarks/bench_kernels.py [--records N] [--repeat R]

Times each kernel on synthetic arrays, then a full week sweep through the
public API with each path switched on. Prints one line per measurement.
"""
import argparse
import time

import numpy as np

from silentmine import kernels
from silentmine.rulegen import mine_rules
from silentmine.slicing import slice_edges
from silentmine.synthgen import PlantedPeriod, SynthSpec, generate
from silentmine.calllog import Day


def best_of(fn, repeat):
    fn()  # warm-up, includes JIT compilation on first call
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_kernels(n_records, repeat):
    rng = np.random.default_rng(0)
    minutes = rng.integers(0, 1440, n_records)
    codes = rng.integers(0, 4, n_records)
    edges = slice_edges(5)
    counts = kernels.bin_counts_numpy(minutes, codes, edges)
    mask = kernels.dominant_mask_numpy(counts, 0.3, 1)

    cases = {
        "bin_counts": (kernels.bin_counts_numba, kernels.bin_counts_numpy, (minutes, codes, edges)),
        "dominant_mask": (kernels.dominant_mask_numba, kernels.dominant_mask_numpy, (counts, 0.3, 1)),
        "run_bounds": (kernels.run_bounds_numba, kernels.run_bounds_numpy, (mask,)),
    }
    for name, (jit_fn, np_fn, args) in cases.items():
        t_jit = best_of(lambda: jit_fn(*args), repeat)
        t_np = best_of(lambda: np_fn(*args), repeat)
        print(f"{name:14s} numba {t_jit * 1e6:10.1f} us   numpy {t_np * 1e6:10.1f} us   ratio {t_np / t_jit:6.2f}x")


def bench_pipeline(weeks, repeat):
    spec = SynthSpec(
        weeks=weeks,
        planted=(PlantedPeriod(Day.FRIDAY, 975, 1050, 0.95), PlantedPeriod(Day.MONDAY, 600, 700, 0.9)),
        seed=1,
    )
    data = generate(spec)
    _ = data.codes  # build column cache outside the timed region
    for use_jit in (True, False):
        kernels.USE_JIT = use_jit
        t = best_of(lambda: mine_rules(data, 0.8), repeat)
        label = "numba" if use_jit else "numpy"
        print(f"mine_rules     {label} {t * 1e3:8.2f} ms  ({len(data)} records, 7 days x 12 bases)")
    kernels.USE_JIT = kernels.NUMBA_AVAILABLE and not kernels._env_disabled()


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--records", type=int, default=1_000_000)
    parser.add_argument("--weeks", type=int, default=52)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not kernels.NUMBA_AVAILABLE:
        raise SystemExit("numba is not installed; nothing to compare")
    bench_kernels(args.records, args.repeat)
    bench_pipeline(args.weeks, args.repeat)


if __name__ == "__main__":
    main()
