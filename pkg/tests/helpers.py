"""Shared test oracles: dense brute-force references independent of the
package's kernels and conversions."""

import numpy as np

from dacsr import DacsrMatrix, TripletMatrix, csr_from_triplets


def dense_from_entries(nrows, ncols, entries):
    """Dense matrix accumulated entry by entry (duplicates sum)."""
    d = np.zeros((nrows, ncols), dtype=np.float64)
    for r, c, v in entries:
        d[r, c] += v
    return d


def dense_from_matrix(a):
    """Dense copy rebuilt by explicit loops over the stored arrays."""
    d = np.zeros((a.nrows, a.ncols), dtype=np.float64)
    for r in range(a.nrows):
        for i in range(int(a.rowptr[r]), int(a.rowptr[r + 1])):
            c = int(a.colids[i])
            if isinstance(a, DacsrMatrix):
                c += r
            d[r, c] += float(a.values[i])
    return d


def dense_matvec(dense, x, y0=None, alpha=1.0, beta=0.0):
    """Two-loop matrix-vector oracle over plain Python floats."""
    nrows, ncols = dense.shape
    xs = np.asarray(x, dtype=np.float64).tolist()
    rows = dense.tolist()
    y = np.zeros(nrows, dtype=np.float64)
    for r in range(nrows):
        acc = 0.0
        row = rows[r]
        for c in range(ncols):
            acc += row[c] * xs[c]
        y[r] = alpha * acc
        if beta != 0.0:
            y[r] += beta * float(y0[r])
    return y


def dense_bandwidth(dense):
    """Brute-force bandwidth: max |c - r| over nonzero dense entries."""
    w = 0
    nrows, ncols = dense.shape
    for r in range(nrows):
        for c in range(ncols):
            if dense[r, c] != 0.0:
                w = max(w, abs(c - r))
    return w


def random_entries(rng, nrows, ncols, density, explicit_zero_frac=0.05,
                   duplicate_frac=0.0):
    """Random triplet list; some values are exact zeros, optionally with
    duplicated positions."""
    target = max(int(round(density * nrows * ncols)), 0)
    entries = []
    for _ in range(target):
        r = int(rng.integers(0, nrows))
        c = int(rng.integers(0, ncols))
        if rng.random() < explicit_zero_frac:
            v = 0.0
        else:
            v = float(rng.uniform(0.5, 1.5))
        entries.append((r, c, v))
        if duplicate_frac and rng.random() < duplicate_frac:
            entries.append((r, c, float(rng.uniform(0.5, 1.5))))
    return entries


def matrix_from_entries(nrows, ncols, entries, oindex=32, iindex=32, scalar=64):
    t = TripletMatrix.from_entries(nrows, ncols, entries)
    return csr_from_triplets(t, oindex=oindex, iindex=iindex, scalar=scalar)


def max_rel_err(y, ref):
    """Largest elementwise error relative to the reference's magnitude."""
    scale = max(float(np.max(np.abs(ref))) if len(ref) else 0.0, 1e-300)
    diff = float(np.max(np.abs(np.asarray(y, dtype=np.float64) - ref))) if len(ref) else 0.0
    return diff / scale
