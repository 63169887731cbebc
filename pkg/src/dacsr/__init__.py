"""Diagonally-addressed CSR sparse matrices.

Storing column indices relative to the diagonal shrinks their range from
[0, ncols) to [-w, w] for a matrix of bandwidth w, so a narrower integer
type suffices and memory-bound kernels move fewer bytes.  The package
provides the storage formats, reverse Cuthill-McKee bandwidth reduction,
SpMV kernels in several variants, the analytic traffic/speedup model, and
a timing harness, all wired into the ``dacsr`` CLI.
"""

from .bench import (
    BenchConfig,
    CacheSpec,
    ConversionFailure,
    FormatSpec,
    SuiteResult,
    cache_bucket,
    run_suite,
    time_kernel,
)
from .core import (
    INDEX_WIDTHS,
    SCALAR_WIDTHS,
    CsrMatrix,
    DacsrMatrix,
    TripletMatrix,
    bandwidth,
    csr_from_triplets,
    index_dtype,
    index_max,
    scalar_dtype,
    to_csr,
    to_dacsr,
)
from .io import (
    ResultRecord,
    read_matrix_market,
    write_matrix_market,
    write_results,
)
from .model import (
    MIB,
    StorageWidths,
    TrafficReport,
    matrix_traffic,
    predicted_speedup,
    relative_performance,
    relative_throughput,
    spmv_traffic,
)
from .reorder import Permutation, permute_symmetric, rcm, symmetrized_adjacency
from .spmv import (
    SERIAL_VARIANTS,
    ParallelRowBlock,
    available_backends,
    default_backend,
    spmv,
    work_flops,
)
from . import errors

__version__ = "0.1.0"

__all__ = [
    "BenchConfig",
    "CacheSpec",
    "ConversionFailure",
    "CsrMatrix",
    "DacsrMatrix",
    "FormatSpec",
    "INDEX_WIDTHS",
    "MIB",
    "ParallelRowBlock",
    "Permutation",
    "ResultRecord",
    "SCALAR_WIDTHS",
    "SERIAL_VARIANTS",
    "StorageWidths",
    "SuiteResult",
    "TrafficReport",
    "TripletMatrix",
    "available_backends",
    "bandwidth",
    "cache_bucket",
    "csr_from_triplets",
    "default_backend",
    "errors",
    "index_dtype",
    "index_max",
    "matrix_traffic",
    "permute_symmetric",
    "predicted_speedup",
    "rcm",
    "read_matrix_market",
    "relative_performance",
    "relative_throughput",
    "run_suite",
    "scalar_dtype",
    "spmv",
    "spmv_traffic",
    "symmetrized_adjacency",
    "time_kernel",
    "to_csr",
    "to_dacsr",
    "work_flops",
    "write_matrix_market",
    "write_results",
]
