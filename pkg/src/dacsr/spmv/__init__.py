"""SpMV kernels: y <- alpha*A@x + beta*y for CSR and DA-CSR matrices.

Hot loops run as numba-compiled kernels by default; set DACSR_BACKEND=numpy
to force the pure-numpy fallback (which is also selected automatically when
numba cannot be imported).  The parallel variant splits rows into
nnz-balanced contiguous blocks and runs the serial inner kernel per block on
plain threads; workers write disjoint y slices, so the result is
bit-identical to the serial inner variant.
"""

import os
import threading
from dataclasses import dataclass

import numpy as np

from ..core import CsrMatrix, DacsrMatrix
from ..errors import DimensionMismatch, UnsupportedScalarWidth
from . import _numpy_kernels

ENV_FLAG = "DACSR_BACKEND"

try:
    from . import _numba_kernels
except ImportError:  # pragma: no cover - exercised via DACSR_BACKEND=numpy
    _numba_kernels = None

SERIAL_VARIANTS = ("naive", "shifted_base", "multi_accumulator_3", "strip_mined_4")

_KERNEL_SUFFIX = {
    "naive": "naive",
    "shifted_base": "shifted_base",
    "multi_accumulator_3": "multi_acc3",
    "strip_mined_4": "strip_mined4",
}


def available_backends():
    """Backends usable in this process."""
    return ("numba", "numpy") if _numba_kernels is not None else ("numpy",)


def default_backend():
    """Backend chosen by the DACSR_BACKEND flag (auto/numba/numpy)."""
    choice = os.environ.get(ENV_FLAG, "auto")
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"{ENV_FLAG} must be auto, numba, or numpy, got {choice!r}")
    if choice == "auto":
        return "numba" if _numba_kernels is not None else "numpy"
    if choice == "numba" and _numba_kernels is None:
        raise RuntimeError("DACSR_BACKEND=numba but numba is not importable")
    return choice


@dataclass(frozen=True)
class ParallelRowBlock:
    """Row-block parallel execution of a serial inner variant."""

    threads: int
    inner: str = "naive"

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.inner not in SERIAL_VARIANTS:
            raise ValueError(
                f"inner variant must be one of {SERIAL_VARIANTS}, got {self.inner!r}"
            )


def row_blocks(rowptr, nblocks):
    """Split rows into ``nblocks`` contiguous ranges with roughly equal nnz.

    Block boundaries are found by a greedy prefix-sum split of rowptr; the
    ranges are disjoint and cover [0, nrows) even when some end up empty.
    """
    nrows = len(rowptr) - 1
    nnz = int(rowptr[-1])
    cuts = [0]
    for k in range(1, nblocks):
        target = (k * nnz) // nblocks
        b = int(np.searchsorted(rowptr, target, side="left"))
        cuts.append(min(max(b, cuts[-1]), nrows))
    cuts.append(nrows)
    return [(cuts[i], cuts[i + 1]) for i in range(nblocks)]


def _resolve_kernel(kind, variant, backend):
    if backend == "numba":
        mod = _numba_kernels
    elif backend == "numpy":
        mod = _numpy_kernels
    else:
        raise ValueError(f"unknown backend {backend!r}")
    try:
        suffix = _KERNEL_SUFFIX[variant]
    except KeyError:
        raise ValueError(
            f"unknown variant {variant!r}; expected one of {SERIAL_VARIANTS}"
        )
    return getattr(mod, f"{kind}_{suffix}")


def spmv(a, x, y=None, alpha=1.0, beta=0.0, variant="naive", backend=None):
    """Compute y <- alpha*A@x + beta*y and return y.

    Parameters
    ----------
    a : CsrMatrix or DacsrMatrix
    x : vector of length ncols, same dtype as a.values
    y : vector of length nrows, same dtype; may be omitted when beta == 0,
        in which case a fresh output vector is allocated.  When beta == 0
        the previous contents of y are never read.
    variant : one of SERIAL_VARIANTS or a ParallelRowBlock
    backend : "numba" or "numpy"; defaults to the DACSR_BACKEND selection
    """
    if isinstance(a, CsrMatrix):
        kind = "csr"
    elif isinstance(a, DacsrMatrix):
        kind = "da"
    else:
        raise TypeError(f"expected CsrMatrix or DacsrMatrix, got {type(a).__name__}")
    x = np.asarray(x)
    if x.shape != (a.ncols,):
        raise DimensionMismatch(
            f"x has shape {x.shape}, expected ({a.ncols},)"
        )
    alpha = float(alpha)
    beta = float(beta)
    if y is None:
        if beta != 0.0:
            raise ValueError("y must be provided when beta != 0")
        y = np.empty(a.nrows, dtype=a.values.dtype)
    else:
        if not isinstance(y, np.ndarray):
            raise TypeError("y must be a numpy array (it is updated in place)")
        if y.shape != (a.nrows,):
            raise DimensionMismatch(
                f"y has shape {y.shape}, expected ({a.nrows},)"
            )
    if a.values.dtype not in (np.float32, np.float64):
        raise UnsupportedScalarWidth(f"unsupported scalar dtype {a.values.dtype}")
    if x.dtype != a.values.dtype or y.dtype != a.values.dtype:
        raise UnsupportedScalarWidth(
            f"scalar widths disagree: matrix {a.values.dtype}, x {x.dtype}, y {y.dtype}"
        )
    if backend is None:
        backend = default_backend()

    if alpha == 0.0:
        # no matrix or x access needed; keep -0.0/NaN in y intact for beta=1
        if beta == 0.0:
            y[:] = 0.0
        elif beta != 1.0:
            y[:] = np.float64(beta) * y
        return y

    if isinstance(variant, ParallelRowBlock):
        kernel = _resolve_kernel(kind, variant.inner, backend)
        if variant.threads == 1:
            kernel(a.rowptr, a.colids, a.values, x, y, alpha, beta, 0, a.nrows)
            return y
        blocks = [b for b in row_blocks(a.rowptr, variant.threads) if b[0] < b[1]]
        failures = []

        def run(rs, re):
            try:
                kernel(a.rowptr, a.colids, a.values, x, y, alpha, beta, rs, re)
            except BaseException as exc:  # noqa: BLE001 - reraised below
                failures.append(exc)

        workers = [threading.Thread(target=run, args=b) for b in blocks]
        for w in workers:
            w.start()
        for w in workers:
            w.join()
        if failures:
            raise failures[0]
        return y

    kernel = _resolve_kernel(kind, variant, backend)
    kernel(a.rowptr, a.colids, a.values, x, y, alpha, beta, 0, a.nrows)
    return y


def work_flops(a=None, *, nnz=None, nrows=None):
    """Floating-point work of one SpMV: 2*nnz + 2*nrows.

    Pass a matrix, or nnz/nrows counts directly.
    """
    if a is not None:
        nnz, nrows = a.nnz, a.nrows
    return 2 * nnz + 2 * nrows


__all__ = [
    "ENV_FLAG",
    "ParallelRowBlock",
    "SERIAL_VARIANTS",
    "available_backends",
    "default_backend",
    "row_blocks",
    "spmv",
    "work_flops",
]
