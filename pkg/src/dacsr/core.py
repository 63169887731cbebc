"""Sparse matrix containers: triplet, CSR, and diagonally-addressed CSR.

The diagonally-addressed variant stores each column index as the signed
offset ``col - row`` instead of the absolute column.  Offsets live in
``[-w, w]`` where ``w`` is the matrix bandwidth, so a matrix whose pattern
hugs the diagonal fits a narrower integer type than its dimension would
otherwise require.

All matrices are immutable after construction (their arrays are marked
read-only) and therefore safe to share across threads.  ``nnz`` counts
pattern entries: explicitly stored zeros are kept.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    BandwidthExceedsIndexRange,
    EntryOutOfBounds,
    IndexRangeExceeded,
)

_INDEX_DTYPES = {8: np.int8, 16: np.int16, 32: np.int32, 64: np.int64}
_SCALAR_DTYPES = {64: np.float64, 32: np.float32}

INDEX_WIDTHS = tuple(_INDEX_DTYPES)
SCALAR_WIDTHS = tuple(_SCALAR_DTYPES)


def index_dtype(bits):
    """Signed integer dtype for an index width in bits (8/16/32/64)."""
    try:
        return np.dtype(_INDEX_DTYPES[bits])
    except KeyError:
        raise ValueError(f"index width must be one of {INDEX_WIDTHS}, got {bits!r}")


def index_max(bits):
    """Largest value representable by a signed index of the given width."""
    if bits not in _INDEX_DTYPES:
        raise ValueError(f"index width must be one of {INDEX_WIDTHS}, got {bits!r}")
    return 2 ** (bits - 1) - 1


def scalar_dtype(bits):
    """Floating-point dtype for an executable scalar width (64 or 32)."""
    try:
        return np.dtype(_SCALAR_DTYPES[bits])
    except KeyError:
        raise ValueError(f"scalar width must be one of {SCALAR_WIDTHS}, got {bits!r}")


def _freeze(arr):
    """Return a read-only view of ``arr``, copying only if it is writable."""
    a = np.asarray(arr)
    if a.flags.writeable:
        a = a.copy()
        a.flags.writeable = False
    return a


def entry_rows(rowptr):
    """Row index of every stored entry, expanded from a rowptr array."""
    counts = np.diff(rowptr.astype(np.int64, copy=False))
    return np.repeat(np.arange(len(rowptr) - 1, dtype=np.int64), counts)


@dataclass(frozen=True, eq=False)
class TripletMatrix:
    """Unordered (row, col, value) entries; the ingestion form.

    Duplicates are permitted and are summed when converting to CSR.
    """

    nrows: int
    ncols: int
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        rows = _freeze(np.asarray(self.rows, dtype=np.int64))
        cols = _freeze(np.asarray(self.cols, dtype=np.int64))
        values = _freeze(np.asarray(self.values, dtype=np.float64))
        if not (len(rows) == len(cols) == len(values)):
            raise ValueError("rows, cols, values must have equal length")
        if len(rows):
            if rows.min() < 0 or rows.max() >= self.nrows:
                raise EntryOutOfBounds(
                    f"row index outside [0, {self.nrows})"
                )
            if cols.min() < 0 or cols.max() >= self.ncols:
                raise EntryOutOfBounds(
                    f"column index outside [0, {self.ncols})"
                )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        """Build from an iterable of (row, col, value) tuples."""
        entries = list(entries)
        rows = np.array([e[0] for e in entries], dtype=np.int64)
        cols = np.array([e[1] for e in entries], dtype=np.int64)
        values = np.array([e[2] for e in entries], dtype=np.float64)
        return cls(nrows, ncols, rows, cols, values)

    @property
    def nnz(self):
        return len(self.rows)


def _validate_csr_arrays(nrows, ncols, rowptr, colids, values):
    if rowptr.ndim != 1 or colids.ndim != 1 or values.ndim != 1:
        raise ValueError("rowptr, colids, values must be one-dimensional")
    if rowptr.dtype not in (np.int8, np.int16, np.int32, np.int64):
        raise ValueError(f"rowptr has unsupported dtype {rowptr.dtype}")
    if colids.dtype not in (np.int8, np.int16, np.int32, np.int64):
        raise ValueError(f"colids has unsupported dtype {colids.dtype}")
    if values.dtype not in (np.float32, np.float64):
        raise ValueError(f"values has unsupported dtype {values.dtype}")
    if len(rowptr) != nrows + 1:
        raise ValueError(f"rowptr must have length nrows+1 = {nrows + 1}")
    if len(colids) != len(values):
        raise ValueError("colids and values must have equal length")
    rp = rowptr.astype(np.int64, copy=False)
    if rp[0] != 0:
        raise ValueError("rowptr[0] must be 0")
    if rp[-1] != len(colids):
        raise ValueError("rowptr[-1] must equal nnz")
    if np.any(np.diff(rp) < 0):
        raise ValueError("rowptr must be non-decreasing")


def _validate_sorted_within_rows(rowptr, inner, what):
    # strictly increasing inner indices within each row (canonical form)
    c = inner.astype(np.int64, copy=False)
    if len(c) < 2:
        return
    rows = entry_rows(rowptr)
    same_row = rows[1:] == rows[:-1]
    if np.any(same_row & (np.diff(c) <= 0)):
        raise ValueError(f"{what} must be strictly increasing within each row")


@dataclass(frozen=True, eq=False)
class CsrMatrix:
    """Compressed sparse row storage: rowptr / colids / values.

    Canonical form: rowptr non-decreasing with rowptr[0] = 0 and
    rowptr[nrows] = nnz, and strictly increasing column indices within
    each row.  Index arrays use signed dtypes; colids hold non-negative
    absolute columns.
    """

    nrows: int
    ncols: int
    rowptr: np.ndarray
    colids: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        rowptr = _freeze(self.rowptr)
        colids = _freeze(self.colids)
        values = _freeze(self.values)
        _validate_csr_arrays(self.nrows, self.ncols, rowptr, colids, values)
        if len(colids):
            c = colids.astype(np.int64, copy=False)
            if c.min() < 0 or c.max() >= self.ncols:
                raise ValueError(f"column index outside [0, {self.ncols})")
        _validate_sorted_within_rows(rowptr, colids, "column indices")
        object.__setattr__(self, "rowptr", rowptr)
        object.__setattr__(self, "colids", colids)
        object.__setattr__(self, "values", values)

    @property
    def nnz(self):
        return len(self.colids)

    @property
    def oindex_width(self):
        return self.rowptr.dtype.itemsize * 8

    @property
    def iindex_width(self):
        return self.colids.dtype.itemsize * 8

    @property
    def scalar_width(self):
        return self.values.dtype.itemsize * 8

    def __eq__(self, other):
        if not isinstance(other, CsrMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rowptr.dtype == other.rowptr.dtype
            and self.colids.dtype == other.colids.dtype
            and self.values.dtype == other.values.dtype
            and np.array_equal(self.rowptr, other.rowptr)
            and np.array_equal(self.colids, other.colids)
            and np.array_equal(self.values, other.values)
        )


@dataclass(frozen=True, eq=False)
class DacsrMatrix:
    """CSR layout with diagonally-addressed column indices.

    ``colids[i]`` holds the signed offset ``col - row`` of the i-th entry;
    the absolute column is recovered as ``row + colids[i]``.
    """

    nrows: int
    ncols: int
    rowptr: np.ndarray
    colids: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        rowptr = _freeze(self.rowptr)
        colids = _freeze(self.colids)
        values = _freeze(self.values)
        _validate_csr_arrays(self.nrows, self.ncols, rowptr, colids, values)
        if len(colids):
            cols = entry_rows(rowptr) + colids.astype(np.int64, copy=False)
            if cols.min() < 0 or cols.max() >= self.ncols:
                raise ValueError(
                    f"offset maps outside column range [0, {self.ncols})"
                )
        _validate_sorted_within_rows(rowptr, colids, "offsets")
        object.__setattr__(self, "rowptr", rowptr)
        object.__setattr__(self, "colids", colids)
        object.__setattr__(self, "values", values)

    @property
    def nnz(self):
        return len(self.colids)

    @property
    def oindex_width(self):
        return self.rowptr.dtype.itemsize * 8

    @property
    def iindex_width(self):
        return self.colids.dtype.itemsize * 8

    @property
    def scalar_width(self):
        return self.values.dtype.itemsize * 8

    def __eq__(self, other):
        if not isinstance(other, DacsrMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rowptr.dtype == other.rowptr.dtype
            and self.colids.dtype == other.colids.dtype
            and self.values.dtype == other.values.dtype
            and np.array_equal(self.rowptr, other.rowptr)
            and np.array_equal(self.colids, other.colids)
            and np.array_equal(self.values, other.values)
        )


def _assemble_csr(nrows, ncols, rows, cols, values, oindex, iindex, scalar,
                  sum_duplicates):
    """Sort entries into canonical CSR, optionally summing duplicates."""
    order = np.lexsort((cols, rows))
    r = rows[order]
    c = cols[order]
    v = values[order]
    if sum_duplicates and len(r):
        first = np.empty(len(r), dtype=bool)
        first[0] = True
        first[1:] = (r[1:] != r[:-1]) | (c[1:] != c[:-1])
        group = np.cumsum(first) - 1
        v = np.bincount(group, weights=v)
        r = r[first]
        c = c[first]
    nnz = len(r)
    if nnz > index_max(oindex):
        raise IndexRangeExceeded(
            f"nnz = {nnz} does not fit a {oindex}-bit signed rowptr"
        )
    if ncols > 0 and ncols - 1 > index_max(iindex):
        raise IndexRangeExceeded(
            f"ncols = {ncols} does not fit {iindex}-bit signed column indices"
        )
    rowptr = np.zeros(nrows + 1, dtype=np.int64)
    np.cumsum(np.bincount(r, minlength=nrows), out=rowptr[1:])
    rowptr = rowptr.astype(index_dtype(oindex))
    colids = c.astype(index_dtype(iindex))
    vals = v.astype(scalar_dtype(scalar))
    for a in (rowptr, colids, vals):
        a.flags.writeable = False
    return CsrMatrix(nrows, ncols, rowptr, colids, vals)


def csr_from_triplets(t, oindex=32, iindex=32, scalar=64):
    """Convert triplets to canonical CSR at the requested storage widths.

    Duplicate entries are summed; entries whose value is zero (stored or
    produced by summing) are kept as pattern entries.

    Raises
    ------
    IndexRangeExceeded
        If nnz does not fit the rowptr width or ncols does not fit the
        column-index width.
    """
    return _assemble_csr(t.nrows, t.ncols, t.rows, t.cols, t.values,
                         oindex, iindex, scalar, sum_duplicates=True)


def bandwidth(a):
    """Matrix bandwidth: the largest |col - row| over stored entries.

    Defined as 0 for empty and diagonal-only matrices.  Accepts both CSR
    and DA-CSR matrices.
    """
    if a.nnz == 0:
        return 0
    offs = a.colids.astype(np.int64, copy=False)
    if isinstance(a, CsrMatrix):
        offs = offs - entry_rows(a.rowptr)
    return int(np.abs(offs).max())


def to_dacsr(a, iindex=16):
    """Re-express a CSR matrix with diagonal-relative column indices.

    The conversion is lossless: rowptr and values are shared unchanged and
    every offset maps back to the original column exactly.

    Raises
    ------
    BandwidthExceedsIndexRange
        If the bandwidth exceeds the signed range of the offset width
        (w > 2**(bits-1) - 1).
    """
    w = bandwidth(a)
    if w > index_max(iindex):
        raise BandwidthExceedsIndexRange(
            f"bandwidth {w} exceeds the {iindex}-bit signed offset range "
            f"[-{index_max(iindex)}, {index_max(iindex)}]"
        )
    offs = a.colids.astype(np.int64, copy=False) - entry_rows(a.rowptr)
    offs = offs.astype(index_dtype(iindex))
    offs.flags.writeable = False
    return DacsrMatrix(a.nrows, a.ncols, a.rowptr, offs, a.values)


def to_csr(a, iindex=32):
    """Recover absolute column indices from a DA-CSR matrix.

    Inverse of :func:`to_dacsr`; the roundtrip reproduces the original CSR
    matrix bit-exactly.

    Raises
    ------
    IndexRangeExceeded
        If ncols does not fit the target column-index width.
    """
    if a.ncols > 0 and a.ncols - 1 > index_max(iindex):
        raise IndexRangeExceeded(
            f"ncols = {a.ncols} does not fit {iindex}-bit signed column indices"
        )
    cols = entry_rows(a.rowptr) + a.colids.astype(np.int64, copy=False)
    cols = cols.astype(index_dtype(iindex))
    cols.flags.writeable = False
    return CsrMatrix(a.nrows, a.ncols, a.rowptr, cols, a.values)
