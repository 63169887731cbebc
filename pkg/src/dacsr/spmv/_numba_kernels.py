"""Compiled SpMV inner loops.

Every kernel computes y[r] = alpha * sum_i values[i] * x[col_i] + beta * y[r]
over the row range [row_start, row_end); when beta == 0 the old y is never
read.  Kernels are compiled lazily per dtype combination and release the
GIL so row blocks can run on plain Python threads.
"""

from numba import njit


@njit(nogil=True, cache=True)
def csr_naive(rowptr, colids, values, x, y, alpha, beta, row_start, row_end):
    for r in range(row_start, row_end):
        acc = 0.0
        for i in range(rowptr[r], rowptr[r + 1]):
            acc += values[i] * x[colids[i]]
        if beta == 0.0:
            y[r] = alpha * acc
        else:
            y[r] = alpha * acc + beta * y[r]


# CSR already addresses x absolutely, so there is no index translation to
# hoist: the shifted-base variant coincides with the naive kernel.
csr_shifted_base = csr_naive


@njit(nogil=True, cache=True)
def csr_multi_acc3(rowptr, colids, values, x, y, alpha, beta, row_start, row_end):
    for r in range(row_start, row_end):
        s = rowptr[r]
        e = rowptr[r + 1]
        a0 = 0.0
        a1 = 0.0
        a2 = 0.0
        i = s
        while i + 3 <= e:
            a0 += values[i] * x[colids[i]]
            a1 += values[i + 1] * x[colids[i + 1]]
            a2 += values[i + 2] * x[colids[i + 2]]
            i += 3
        if i < e:
            a0 += values[i] * x[colids[i]]
        if i + 1 < e:
            a1 += values[i + 1] * x[colids[i + 1]]
        acc = (a0 + a1) + a2
        if beta == 0.0:
            y[r] = alpha * acc
        else:
            y[r] = alpha * acc + beta * y[r]


@njit(nogil=True, cache=True)
def csr_strip_mined4(rowptr, colids, values, x, y, alpha, beta, row_start, row_end):
    for r in range(row_start, row_end):
        s = rowptr[r]
        e = rowptr[r + 1]
        a0 = 0.0
        a1 = 0.0
        a2 = 0.0
        a3 = 0.0
        i = s
        while i + 4 <= e:
            a0 += values[i] * x[colids[i]]
            a1 += values[i + 1] * x[colids[i + 1]]
            a2 += values[i + 2] * x[colids[i + 2]]
            a3 += values[i + 3] * x[colids[i + 3]]
            i += 4
        acc = (a0 + a1) + (a2 + a3)
        tail = 0.0
        while i < e:
            tail += values[i] * x[colids[i]]
            i += 1
        acc = acc + tail
        if beta == 0.0:
            y[r] = alpha * acc
        else:
            y[r] = alpha * acc + beta * y[r]


@njit(nogil=True, cache=True)
def da_naive(rowptr, colids, values, x, y, alpha, beta, row_start, row_end):
    for r in range(row_start, row_end):
        acc = 0.0
        for i in range(rowptr[r], rowptr[r + 1]):
            acc += values[i] * x[r + colids[i]]
        if beta == 0.0:
            y[r] = alpha * acc
        else:
            y[r] = alpha * acc + beta * y[r]


@njit(nogil=True, cache=True)
def da_shifted_base(rowptr, colids, values, x, y, alpha, beta, row_start, row_end):
    # One base computation per row instead of one index translation per
    # entry; base + offset is formed in integer space and x is indexed
    # exactly once, so rectangular matrices never form an invalid address.
    for r in range(row_start, row_end):
        base = r
        acc = 0.0
        for i in range(rowptr[r], rowptr[r + 1]):
            acc += values[i] * x[base + colids[i]]
        if beta == 0.0:
            y[r] = alpha * acc
        else:
            y[r] = alpha * acc + beta * y[r]


@njit(nogil=True, cache=True)
def da_multi_acc3(rowptr, colids, values, x, y, alpha, beta, row_start, row_end):
    for r in range(row_start, row_end):
        s = rowptr[r]
        e = rowptr[r + 1]
        a0 = 0.0
        a1 = 0.0
        a2 = 0.0
        i = s
        while i + 3 <= e:
            a0 += values[i] * x[r + colids[i]]
            a1 += values[i + 1] * x[r + colids[i + 1]]
            a2 += values[i + 2] * x[r + colids[i + 2]]
            i += 3
        if i < e:
            a0 += values[i] * x[r + colids[i]]
        if i + 1 < e:
            a1 += values[i + 1] * x[r + colids[i + 1]]
        acc = (a0 + a1) + a2
        if beta == 0.0:
            y[r] = alpha * acc
        else:
            y[r] = alpha * acc + beta * y[r]


@njit(nogil=True, cache=True)
def da_strip_mined4(rowptr, colids, values, x, y, alpha, beta, row_start, row_end):
    for r in range(row_start, row_end):
        s = rowptr[r]
        e = rowptr[r + 1]
        a0 = 0.0
        a1 = 0.0
        a2 = 0.0
        a3 = 0.0
        i = s
        while i + 4 <= e:
            a0 += values[i] * x[r + colids[i]]
            a1 += values[i + 1] * x[r + colids[i + 1]]
            a2 += values[i + 2] * x[r + colids[i + 2]]
            a3 += values[i + 3] * x[r + colids[i + 3]]
            i += 4
        acc = (a0 + a1) + (a2 + a3)
        tail = 0.0
        while i < e:
            tail += values[i] * x[r + colids[i]]
            i += 1
        acc = acc + tail
        if beta == 0.0:
            y[r] = alpha * acc
        else:
            y[r] = alpha * acc + beta * y[r]
