"""Pure-numpy SpMV kernels, the fallback when numba is unavailable.

Each function mirrors the summation order of its compiled twin exactly:
np.bincount accumulates weights sequentially in input order, and the gathered
products are identical element streams, so per-row partial sums see the same
addition sequence as the explicit loops.  Accumulation happens in float64
regardless of the scalar width, matching the compiled kernels' float64
accumulators.
"""

import numpy as np


def _expand(rowptr, rs, re):
    lo = int(rowptr[rs])
    hi = int(rowptr[re])
    counts = np.diff(rowptr[rs:re + 1].astype(np.int64, copy=False))
    local_rows = np.repeat(np.arange(re - rs, dtype=np.int64), counts)
    return lo, hi, counts, local_rows


def _positions(rowptr, rs, re, counts, lo, hi):
    # position of every entry within its own row
    starts = np.repeat(rowptr[rs:re].astype(np.int64, copy=False), counts)
    return np.arange(lo, hi, dtype=np.int64) - starts


def _products_csr(colids, values, x, lo, hi, local_rows, rs):
    cols = colids[lo:hi].astype(np.int64, copy=False)
    return values[lo:hi] * x[cols]


def _products_da(colids, values, x, lo, hi, local_rows, rs):
    cols = local_rows + rs + colids[lo:hi].astype(np.int64, copy=False)
    return values[lo:hi] * x[cols]


def _combine(y, rs, re, sums, alpha, beta):
    a = np.float64(alpha)
    if beta == 0.0:
        out = a * sums
    else:
        out = a * sums + np.float64(beta) * y[rs:re]
    y[rs:re] = out


def _naive(products, rowptr, colids, values, x, y, alpha, beta, rs, re):
    lo, hi, counts, local_rows = _expand(rowptr, rs, re)
    prods = products(colids, values, x, lo, hi, local_rows, rs)
    sums = np.bincount(local_rows, weights=prods, minlength=re - rs)
    _combine(y, rs, re, sums, alpha, beta)


def _multi_acc3(products, rowptr, colids, values, x, y, alpha, beta, rs, re):
    lo, hi, counts, local_rows = _expand(rowptr, rs, re)
    prods = products(colids, values, x, lo, hi, local_rows, rs)
    lane = _positions(rowptr, rs, re, counts, lo, hi) % 3
    n = re - rs
    parts = [
        np.bincount(local_rows[lane == k], weights=prods[lane == k], minlength=n)
        for k in range(3)
    ]
    sums = (parts[0] + parts[1]) + parts[2]
    _combine(y, rs, re, sums, alpha, beta)


def _strip_mined4(products, rowptr, colids, values, x, y, alpha, beta, rs, re):
    lo, hi, counts, local_rows = _expand(rowptr, rs, re)
    prods = products(colids, values, x, lo, hi, local_rows, rs)
    pos = _positions(rowptr, rs, re, counts, lo, hi)
    rowlen = np.repeat(counts, counts)
    main = pos < (rowlen // 4) * 4
    lane = pos % 4
    n = re - rs
    parts = []
    for k in range(4):
        sel = main & (lane == k)
        parts.append(
            np.bincount(local_rows[sel], weights=prods[sel], minlength=n)
        )
    tail = np.bincount(local_rows[~main], weights=prods[~main], minlength=n)
    sums = ((parts[0] + parts[1]) + (parts[2] + parts[3])) + tail
    _combine(y, rs, re, sums, alpha, beta)


def csr_naive(rowptr, colids, values, x, y, alpha, beta, rs, re):
    _naive(_products_csr, rowptr, colids, values, x, y, alpha, beta, rs, re)


def csr_multi_acc3(rowptr, colids, values, x, y, alpha, beta, rs, re):
    _multi_acc3(_products_csr, rowptr, colids, values, x, y, alpha, beta, rs, re)


def csr_strip_mined4(rowptr, colids, values, x, y, alpha, beta, rs, re):
    _strip_mined4(_products_csr, rowptr, colids, values, x, y, alpha, beta, rs, re)


def da_naive(rowptr, colids, values, x, y, alpha, beta, rs, re):
    _naive(_products_da, rowptr, colids, values, x, y, alpha, beta, rs, re)


def da_multi_acc3(rowptr, colids, values, x, y, alpha, beta, rs, re):
    _multi_acc3(_products_da, rowptr, colids, values, x, y, alpha, beta, rs, re)


def da_strip_mined4(rowptr, colids, values, x, y, alpha, beta, rs, re):
    _strip_mined4(_products_da, rowptr, colids, values, x, y, alpha, beta, rs, re)


# The shifted-base distinction (per-row base pointer versus per-entry index
# translation) is an inner-loop implementation detail; numerically both are
# the naive summation.
csr_shifted_base = csr_naive
da_shifted_base = da_naive
