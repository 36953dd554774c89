#!/usr/bin/env python3
"""Timing comparison of the pure-Python and compiled kernel backends.

Runs each hot kernel with both backends, checks the outputs are
bit-identical, and prints a table of medians with the speedup factor.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import statistics
import time

from peakfn import _kernels
from peakfn._kernels import active_backend, available_backends, use_backend

LID = 2.302585092994046   # log(1/D) at D = 0.1
LIA = 0.6931471805599453  # log(1/A) at A = 0.5
CA = 11.09035488895912    # schedule offset constant under REF


CASES = [
    ("quad psi^-t on [0,1]", lambda: _kernels.quad_psi_negt(
        0.0, 1.0, LID, CA, 0.25, 0.75, 1e-10)),
    ("quad psi^-t on [25,75]", lambda: _kernels.quad_psi_negt(
        25.0, 75.0, LID, CA, 0.25, 0.75, 1e-10)),
    ("bracket_sweep m<=1e4", lambda: _kernels.bracket_sweep(10_000, 0.25)),
    ("choose_l_sweep m<=1e4", lambda: _kernels.choose_l_sweep(
        10_000, 0.25, 5.0)),
    ("radius_bound m<=1e4", lambda: _kernels.radius_bound_sweep(
        10_000, 0.25, LID, LIA, 5.0)),
    ("pow_sums m<=1e4", lambda: _kernels.pow_sums(10_000, 0.25)),
]


def time_case(fn, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=7,
                        help="timing repetitions per case (median reported)")
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends available: {', '.join(backends)}")
    if "compiled" not in backends:
        print("compiled backend not built; timing pure backend only")

    restore = active_backend()
    rows = []
    try:
        for name, fn in CASES:
            timings = {}
            values = {}
            for be in backends:
                use_backend(be)
                values[be] = fn()
                timings[be] = time_case(fn, args.repeat)
            if len(backends) == 2:
                assert values["pure"] == values["compiled"], \
                    f"backend mismatch in {name}"
            rows.append((name, timings))
    finally:
        use_backend(restore)

    width = max(len(name) for name, _ in rows)
    header = f"{'kernel':<{width}}  {'pure (ms)':>10}"
    if "compiled" in backends:
        header += f"  {'compiled (ms)':>14}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, timings in rows:
        line = f"{name:<{width}}  {timings['pure'] * 1e3:>10.3f}"
        if "compiled" in timings:
            comp = timings["compiled"]
            line += f"  {comp * 1e3:>14.3f}  {timings['pure'] / comp:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
