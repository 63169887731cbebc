"""Matrix Market ingestion/emission and benchmark-result serialization.

The reader accepts coordinate files with real, integer, or pattern fields
and general, symmetric, or skew-symmetric storage (NIST convention,
1-based indices).  Symmetric storage is expanded to general on read;
explicitly stored zeros are kept as pattern entries.
"""

import csv
import dataclasses
import json
from dataclasses import dataclass

import numpy as np

from .core import TripletMatrix, entry_rows
from .errors import ParseError, UnsupportedFormat


@dataclass(frozen=True)
class MarketHeader:
    object: str
    format: str
    field: str
    symmetry: str


@dataclass
class ResultRecord:
    """One timed kernel run; performance and throughput are recomputable
    as work/time and traffic/time from the stored fields."""

    matrix_name: str
    format: str
    oindex_bytes: int
    iindex_bytes: int
    scalar_bytes: int
    variant: str
    threads: int
    traffic_bytes: int
    work_flops: int
    time_seconds: float
    performance_flops_per_s: float
    throughput_bytes_per_s: float
    cache_bucket: str
    best: bool = False


def _parse_header(line):
    tokens = line.strip().split()
    if not tokens or tokens[0].lower() != "%%matrixmarket":
        raise ParseError(1, "missing %%MatrixMarket banner")
    if len(tokens) != 5:
        raise ParseError(1, f"banner must have 5 tokens, got {len(tokens)}")
    header = MarketHeader(*(t.lower() for t in tokens[1:]))
    if header.object != "matrix":
        raise UnsupportedFormat(f"unsupported object {header.object!r}")
    if header.format == "array":
        raise UnsupportedFormat("array (dense) files are not supported")
    if header.format != "coordinate":
        raise ParseError(1, f"unknown format {header.format!r}")
    if header.field == "complex":
        raise UnsupportedFormat("complex fields are not supported")
    if header.field not in ("real", "integer", "pattern"):
        raise ParseError(1, f"unknown field {header.field!r}")
    if header.symmetry == "hermitian":
        raise UnsupportedFormat("hermitian symmetry is not supported")
    if header.symmetry not in ("general", "symmetric", "skew-symmetric"):
        raise ParseError(1, f"unknown symmetry {header.symmetry!r}")
    return header


def _parse(fh):
    header = _parse_header(fh.readline())
    lineno = 1

    size = None
    for raw in fh:
        lineno += 1
        stripped = raw.strip()
        if not stripped or stripped.startswith("%"):
            continue
        parts = stripped.split()
        if len(parts) != 3:
            raise ParseError(lineno, f"size line must have 3 fields, got {len(parts)}")
        try:
            size = tuple(int(p) for p in parts)
        except ValueError:
            raise ParseError(lineno, f"bad size line {stripped!r}")
        break
    if size is None:
        raise ParseError(lineno, "missing size line")
    nrows, ncols, declared = size
    if nrows < 0 or ncols < 0 or declared < 0:
        raise ParseError(lineno, "size line fields must be non-negative")

    pattern = header.field == "pattern"
    rows, cols, vals = [], [], []
    seen = 0
    for raw in fh:
        lineno += 1
        stripped = raw.strip()
        if not stripped or stripped.startswith("%"):
            continue
        if seen == declared:
            raise ParseError(lineno, f"more than the declared {declared} entries")
        parts = stripped.split()
        expected = 2 if pattern else 3
        if len(parts) != expected:
            raise ParseError(
                lineno, f"entry must have {expected} fields, got {len(parts)}"
            )
        try:
            r = int(parts[0])
            c = int(parts[1])
        except ValueError:
            raise ParseError(lineno, f"bad entry indices {stripped!r}")
        if not 1 <= r <= nrows:
            raise ParseError(lineno, f"row index {r} outside [1, {nrows}]")
        if not 1 <= c <= ncols:
            raise ParseError(lineno, f"column index {c} outside [1, {ncols}]")
        if pattern:
            v = 1.0
        else:
            try:
                v = float(parts[2])
            except ValueError:
                raise ParseError(lineno, f"bad entry value {parts[2]!r}")
        r -= 1
        c -= 1
        if header.symmetry == "skew-symmetric" and r == c:
            raise ParseError(lineno, "diagonal entry in a skew-symmetric file")
        rows.append(r)
        cols.append(c)
        vals.append(v)
        if header.symmetry != "general" and r != c:
            rows.append(c)
            cols.append(r)
            vals.append(-v if header.symmetry == "skew-symmetric" else v)
        seen += 1
    if seen != declared:
        raise ParseError(lineno, f"expected {declared} entries, found {seen}")

    return TripletMatrix(
        nrows, ncols,
        np.array(rows, dtype=np.int64),
        np.array(cols, dtype=np.int64),
        np.array(vals, dtype=np.float64),
    )


def read_matrix_market(source):
    """Read a Matrix Market coordinate file into a TripletMatrix.

    ``source`` is a path or a text file object.  Indices are converted to
    0-based; symmetric/skew-symmetric storage is expanded; pattern entries
    get the value 1.0.
    """
    if hasattr(source, "read"):
        return _parse(source)
    with open(source, "r", encoding="utf-8") as fh:
        return _parse(fh)


def write_matrix_market(a, sink):
    """Write a CSR matrix as a general coordinate Matrix Market file."""
    if hasattr(sink, "write"):
        _write_mm(a, sink)
    else:
        with open(sink, "w", encoding="utf-8") as fh:
            _write_mm(a, fh)


def _write_mm(a, fh):
    fh.write("%%MatrixMarket matrix coordinate real general\n")
    fh.write(f"{a.nrows} {a.ncols} {a.nnz}\n")
    rows = entry_rows(a.rowptr)
    cols = a.colids.astype(np.int64, copy=False)
    for r, c, v in zip(rows, cols, a.values):
        fh.write(f"{r + 1} {c + 1} {v:.17g}\n")


def _csv_cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return value


def write_results(records, sink, format="csv"):
    """Serialize benchmark records as CSV (fixed header) or a JSON array.

    Columns follow the ResultRecord field order exactly; floats carry 17
    significant digits.
    """
    if format not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {format!r}")
    if hasattr(sink, "write"):
        _write_results(records, sink, format)
    else:
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            _write_results(records, fh, format)


def _write_results(records, fh, format):
    names = [f.name for f in dataclasses.fields(ResultRecord)]
    if format == "csv":
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(names)
        for rec in records:
            writer.writerow([_csv_cell(getattr(rec, n)) for n in names])
    else:
        json.dump([dataclasses.asdict(rec) for rec in records], fh, indent=2)
        fh.write("\n")


__all__ = [
    "MarketHeader",
    "ResultRecord",
    "read_matrix_market",
    "write_matrix_market",
    "write_results",
]
