"""Timing harness: warmup + epoch repetition with best-of selection.

A measurement runs ``warmup_iters`` untimed iterations, then ``epochs``
epochs that each repeat the kernel until both ``min_epoch_iters`` and
``min_epoch_time`` are met; the reported time is the minimum per-iteration
time over the epochs, taken on a monotonic clock.  Suites time every
(matrix, format, variant, threads) combination, verify each kernel against
the naive CSR reference before timing, and flag the highest-performance
record per (matrix, format).
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .core import CsrMatrix, index_max, scalar_dtype, to_dacsr
from .errors import DacsrError, IndexRangeExceeded
from .io import ResultRecord
from .model import StorageWidths, spmv_traffic
from .spmv import ParallelRowBlock, spmv, work_flops

BUCKETS = ("L1d", "L2", "L3", "Large")


@dataclass(frozen=True)
class BenchConfig:
    epochs: int = 11
    warmup_iters: int = 10
    min_epoch_iters: int = 10
    min_epoch_time: float = 0.1  # seconds; drop to ~0.01 for CI runs
    thread_counts: tuple = (1, 2, 4, 6, 8)

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.min_epoch_time < 0:
            raise ValueError("min_epoch_time must be >= 0")
        if self.warmup_iters < 0 or self.min_epoch_iters < 0:
            raise ValueError("warmup_iters and min_epoch_iters must be >= 0")
        if any(t < 1 for t in self.thread_counts):
            raise ValueError("thread counts must be >= 1")


@dataclass(frozen=True)
class CacheSpec:
    """Cache capacities used to bucket a problem's traffic.

    Defaults: 32 KiB L1d, 8 MiB total L2, 11 MiB L3.
    """

    l1d_bytes: int = 32 * 1024
    l2_total_bytes: int = 8 * 2 ** 20
    l3_bytes: int = 11 * 2 ** 20

    def __post_init__(self):
        if self.l1d_bytes > self.l2_total_bytes:
            raise ValueError("l1d must not exceed total l2")
        if min(self.l1d_bytes, self.l2_total_bytes, self.l3_bytes) < 0:
            raise ValueError("cache sizes must be non-negative")


@dataclass(frozen=True)
class FormatSpec:
    """A storage format to benchmark: csr or dacsr at given widths."""

    kind: str
    widths: StorageWidths

    def __post_init__(self):
        if self.kind not in ("csr", "dacsr"):
            raise ValueError(f"kind must be csr or dacsr, got {self.kind!r}")
        if self.widths.oindex_bytes == 0 or self.widths.iindex_bytes == 0:
            raise ValueError("benchmark formats need physical index widths")

    @property
    def label(self):
        return (f"{self.kind}(o{self.widths.oindex_bytes * 8},"
                f"i{self.widths.iindex_bytes * 8},f{self.widths.scalar_bytes * 8})")


@dataclass
class ConversionFailure:
    matrix_name: str
    format: str
    reason: str


@dataclass
class SuiteResult:
    records: list = field(default_factory=list)
    failures: list = field(default_factory=list)


def time_kernel(fn, cfg, clock=time.perf_counter):
    """Best-of-epochs per-iteration time of ``fn`` in seconds.

    ``fn`` must be repeatable with identical inputs; with beta = 0 an SpMV
    fully overwrites y, which satisfies this without re-initialization.
    """
    for _ in range(cfg.warmup_iters):
        fn()
    best = math.inf
    for _ in range(cfg.epochs):
        iters = 0
        start = clock()
        while True:
            fn()
            iters += 1
            elapsed = clock() - start
            if iters >= cfg.min_epoch_iters and elapsed >= cfg.min_epoch_time:
                break
        best = min(best, elapsed / iters)
    return best


def cache_bucket(traffic, spec):
    """Classify traffic against L1d, total L2, and combined L2+L3 capacity."""
    if traffic <= spec.l1d_bytes:
        return "L1d"
    if traffic <= spec.l2_total_bytes:
        return "L2"
    if traffic <= spec.l2_total_bytes + spec.l3_bytes:
        return "L3"
    return "Large"


def _materialize(base, fmt):
    """Re-store ``base`` at the widths of ``fmt``, validating the ranges."""
    w = fmt.widths
    obits = w.oindex_bytes * 8
    ibits = w.iindex_bytes * 8
    sdtype = scalar_dtype(w.scalar_bytes * 8)
    if base.nnz > index_max(obits):
        raise IndexRangeExceeded(f"nnz = {base.nnz} does not fit o{obits}")
    rowptr = base.rowptr.astype(np.dtype(f"int{obits}"))
    values = base.values.astype(sdtype)
    if fmt.kind == "csr":
        if base.ncols > 0 and base.ncols - 1 > index_max(ibits):
            raise IndexRangeExceeded(f"ncols = {base.ncols} does not fit i{ibits}")
        colids = base.colids.astype(np.dtype(f"int{ibits}"))
        for arr in (rowptr, colids, values):
            arr.flags.writeable = False
        return CsrMatrix(base.nrows, base.ncols, rowptr, colids, values)
    colids64 = base.colids.astype(np.int64)
    for arr in (rowptr, colids64, values):
        arr.flags.writeable = False
    wide = CsrMatrix(base.nrows, base.ncols, rowptr, colids64, values)
    return to_dacsr(wide, ibits)


def _verify(y, ref, scalar_bytes):
    tol = 2.0 ** -40 if scalar_bytes == 8 else 1e-5
    scale = max(float(np.max(np.abs(ref))) if len(ref) else 0.0, 1e-30)
    err = float(np.max(np.abs(y - ref))) if len(ref) else 0.0
    return err <= tol * scale


def run_suite(matrices, formats, variants, cfg, cache=None, backend=None,
              time_fn=None, seed=0):
    """Benchmark every (matrix, format, variant, threads) combination.

    Parameters
    ----------
    matrices : iterable of (name, CsrMatrix)
        Base matrices; they are re-stored per format spec.
    formats : sequence of FormatSpec
    variants : sequence of serial variant names
    cfg : BenchConfig
    time_fn : optional replacement for :func:`time_kernel` (same signature
        minus the clock), used to inject synthetic timings in tests.

    Conversion and verification failures are recorded per item, never
    fatal.  Kernel runs use alpha=1, beta=0, so iterations are idempotent.
    """
    cache = cache or CacheSpec()
    timer = time_fn or time_kernel
    rng = np.random.default_rng(seed)
    out = SuiteResult()
    for name, base in matrices:
        x64 = rng.uniform(0.5, 1.5, base.ncols)
        refs = {}
        for fmt in formats:
            try:
                mat = _materialize(base, fmt)
            except DacsrError as exc:
                out.failures.append(
                    ConversionFailure(name, fmt.label, f"{type(exc).__name__}: {exc}")
                )
                continue
            sbytes = fmt.widths.scalar_bytes
            if sbytes not in refs:
                sdtype = scalar_dtype(sbytes * 8)
                x = x64.astype(sdtype)
                ref_mat = _materialize(base, FormatSpec("csr", StorageWidths(8, 8, sbytes)))
                refs[sbytes] = (x, spmv(ref_mat, x, variant="naive", backend=backend))
            x, ref = refs[sbytes]
            traffic = spmv_traffic(base.nrows, base.ncols, base.nnz, fmt.widths)
            work = work_flops(base)
            fmt_records = []
            for variant in variants:
                for t in cfg.thread_counts:
                    v = variant if t == 1 else ParallelRowBlock(t, variant)
                    y = np.empty(base.nrows, dtype=x.dtype)
                    spmv(mat, x, y, 1.0, 0.0, v, backend=backend)
                    if not _verify(y, ref, sbytes):
                        out.failures.append(ConversionFailure(
                            name, fmt.label,
                            f"verification failed for {variant} with {t} threads",
                        ))
                        continue

                    def run(mat=mat, x=x, y=y, v=v):
                        spmv(mat, x, y, 1.0, 0.0, v, backend=backend)

                    secs = timer(run, cfg)
                    fmt_records.append(ResultRecord(
                        matrix_name=name,
                        format=fmt.kind,
                        oindex_bytes=fmt.widths.oindex_bytes,
                        iindex_bytes=fmt.widths.iindex_bytes,
                        scalar_bytes=fmt.widths.scalar_bytes,
                        variant=variant,
                        threads=t,
                        traffic_bytes=traffic.total_bytes,
                        work_flops=work,
                        time_seconds=secs,
                        performance_flops_per_s=work / secs,
                        throughput_bytes_per_s=traffic.total_bytes / secs,
                        cache_bucket=cache_bucket(traffic.total_bytes, cache),
                    ))
            if fmt_records:
                ibest = max(range(len(fmt_records)),
                            key=lambda i: fmt_records[i].performance_flops_per_s)
                fmt_records[ibest].best = True
                out.records.extend(fmt_records)
    return out


__all__ = [
    "BUCKETS",
    "BenchConfig",
    "CacheSpec",
    "ConversionFailure",
    "FormatSpec",
    "SuiteResult",
    "cache_bucket",
    "run_suite",
    "time_kernel",
]
