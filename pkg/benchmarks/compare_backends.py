#!/usr/bin/env python3
"""Time the compiled kernels against the pure-numpy fallback.

Runs every serial variant on banded matrices of growing size, once per
available backend, and prints the per-iteration times plus the numba
speedup.  Forcing a single backend still works via DACSR_BACKEND, but this
script bypasses the env flag and calls both directly.
"""

import argparse

import numpy as np

from dacsr import BenchConfig, spmv, time_kernel
from dacsr.generate import banded_random
from dacsr.spmv import SERIAL_VARIANTS, available_backends
from dacsr import to_dacsr


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="2000,20000,200000",
                    help="comma-separated matrix dimensions")
    ap.add_argument("--band", type=int, default=40)
    ap.add_argument("--density", type=float, default=0.1)
    ap.add_argument("--epochs", type=int, default=5)
    ap.add_argument("--min-epoch-ms", type=float, default=20.0)
    args = ap.parse_args()

    backends = available_backends()
    if "numba" not in backends:
        print("numba is not importable; only the numpy fallback will run")
    cfg = BenchConfig(epochs=args.epochs, warmup_iters=3, min_epoch_iters=2,
                      min_epoch_time=args.min_epoch_ms / 1000.0,
                      thread_counts=(1,))

    header = f"{'n':>8} {'nnz':>10} {'format':6} {'variant':22}"
    for b in backends:
        header += f" {b + ' [ms]':>12}"
    if len(backends) == 2:
        header += f" {'speedup':>8}"
    print(header)

    for n in (int(s) for s in args.sizes.split(",")):
        csr = banded_random(n, min(args.band, n - 1), density=args.density,
                            seed=n)
        da = to_dacsr(csr, 16)
        x = np.random.default_rng(0).uniform(0.5, 1.5, n)
        y = np.empty(n)
        for label, mat in (("csr", csr), ("dacsr", da)):
            for variant in SERIAL_VARIANTS:
                times = {}
                for backend in backends:
                    def fn():
                        spmv(mat, x, y, 1.0, 0.0, variant, backend=backend)
                    times[backend] = time_kernel(fn, cfg)
                line = f"{n:>8} {csr.nnz:>10} {label:6} {variant:22}"
                for b in backends:
                    line += f" {times[b] * 1e3:>12.4f}"
                if len(backends) == 2:
                    line += f" {times['numpy'] / times['numba']:>7.1f}x"
                print(line)


if __name__ == "__main__":
    main()
