"""Analytic traffic and speedup model for memory-bound SpMV.

Matrix-related traffic is (nrows+1)*oindex_bytes + nnz*(iindex_bytes +
scalar_bytes); the SpMV traffic additionally counts x and y once each.
For a memory-bound operation the performance ratio equals the inverse
traffic ratio, so predicted speedups are plain traffic quotients.  Ratios
are computed as exact rationals to keep lattice identities free of float
rounding.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonPositiveInput, NonPositiveTime

MIB = 2 ** 20

_BYTE_SIZES = (1, 2, 4, 8)


@dataclass(frozen=True)
class StorageWidths:
    """Byte widths of the three storage components.

    oindex_bytes (rowptr) and iindex_bytes (colids) may be 0 to model
    index-free storage: oindex 0 is the usual bookkeeping approximation
    for matrices with more than a few entries per row, and both 0 models
    dense storage.
    """

    oindex_bytes: int
    iindex_bytes: int
    scalar_bytes: int

    def __post_init__(self):
        if self.oindex_bytes not in (0,) + _BYTE_SIZES:
            raise ValueError(f"oindex_bytes must be 0 or one of {_BYTE_SIZES}")
        if self.iindex_bytes not in (0,) + _BYTE_SIZES:
            raise ValueError(f"iindex_bytes must be 0 or one of {_BYTE_SIZES}")
        if self.scalar_bytes not in _BYTE_SIZES:
            raise ValueError(f"scalar_bytes must be one of {_BYTE_SIZES}")

    @classmethod
    def parse(cls, spec):
        """Parse a width spec like ``f64,i32`` or ``f32,i16,o32``.

        Tokens are fNN (scalar), iNN (column index), oNN (rowptr), widths
        in bits; i0/o0 mean index-free storage.  oindex defaults to o32.
        """
        scalar = iindex = None
        oindex = 4
        for token in spec.split(","):
            token = token.strip().lower()
            if len(token) < 2 or token[0] not in "fio":
                raise ValueError(f"bad width token {token!r} in {spec!r}")
            try:
                bits = int(token[1:])
            except ValueError:
                raise ValueError(f"bad width token {token!r} in {spec!r}")
            if token[0] == "f":
                if bits not in (8, 16, 32, 64):
                    raise ValueError(f"scalar width must be 8/16/32/64 bits: {token!r}")
                scalar = bits // 8
            elif token[0] == "i":
                if bits not in (0, 8, 16, 32, 64):
                    raise ValueError(f"index width must be 0/8/16/32/64 bits: {token!r}")
                iindex = bits // 8
            else:
                if bits not in (0, 8, 16, 32, 64):
                    raise ValueError(f"index width must be 0/8/16/32/64 bits: {token!r}")
                oindex = bits // 8
        if scalar is None or iindex is None:
            raise ValueError(f"width spec {spec!r} needs both an fNN and an iNN token")
        return cls(oindex, iindex, scalar)


@dataclass(frozen=True)
class TrafficReport:
    """Byte counts of one operation's memory traffic."""

    rowptr_bytes: int
    colids_bytes: int
    values_bytes: int
    vector_bytes: int
    total_bytes: int
    bytes_per_nnz: float  # bookkeeping bytes (rowptr + colids) per entry

    @property
    def bookkeeping_bytes(self):
        return self.rowptr_bytes + self.colids_bytes


def matrix_traffic(nrows, nnz, w):
    """Traffic of streaming the matrix once: rowptr + colids + values."""
    rowptr = (nrows + 1) * w.oindex_bytes
    colids = nnz * w.iindex_bytes
    values = nnz * w.scalar_bytes
    total = rowptr + colids + values
    per_nnz = (rowptr + colids) / nnz if nnz else 0.0
    return TrafficReport(rowptr, colids, values, 0, total, per_nnz)


def spmv_traffic(nrows, ncols, nnz, w):
    """Matrix traffic plus one pass over the x and y vectors."""
    m = matrix_traffic(nrows, nnz, w)
    vectors = (nrows + ncols) * w.scalar_bytes
    return TrafficReport(
        m.rowptr_bytes, m.colids_bytes, m.values_bytes, vectors,
        m.total_bytes + vectors, m.bytes_per_nnz,
    )


def predicted_speedup(from_widths, to_widths, approx_no_rowptr=False,
                      nrows=None, nnz=None):
    """Memory-bound speedup of switching storage widths, as an exact Fraction.

    The ratio is traffic(from)/traffic(to) over the matrix-related traffic.
    With ``approx_no_rowptr`` the rowptr term is dropped and the ratio
    reduces to (scalar+iindex)_from / (scalar+iindex)_to, independent of
    the matrix; otherwise nrows and nnz are required.
    """
    if approx_no_rowptr:
        return Fraction(
            from_widths.scalar_bytes + from_widths.iindex_bytes,
            to_widths.scalar_bytes + to_widths.iindex_bytes,
        )
    if nrows is None or nnz is None:
        raise ValueError("nrows and nnz are required unless approx_no_rowptr is set")
    t_from = matrix_traffic(nrows, nnz, from_widths).total_bytes
    t_to = matrix_traffic(nrows, nnz, to_widths).total_bytes
    return Fraction(t_from, t_to)


def relative_performance(t_base, t_cand):
    """Performance of the candidate relative to the baseline: t_base/t_cand.

    Valid when both runs perform the same work.
    """
    if t_base <= 0 or t_cand <= 0:
        raise NonPositiveTime(f"times must be positive, got {t_base} and {t_cand}")
    return t_base / t_cand


def relative_throughput(traffic_base, traffic_cand, t_base, t_cand):
    """Throughput ratio (traffic_cand/traffic_base) * (t_base/t_cand)."""
    if traffic_base <= 0 or traffic_cand <= 0:
        raise NonPositiveInput(
            f"traffic must be positive, got {traffic_base} and {traffic_cand}"
        )
    if t_base <= 0 or t_cand <= 0:
        raise NonPositiveInput(f"times must be positive, got {t_base} and {t_cand}")
    return (traffic_cand / traffic_base) * (t_base / t_cand)


__all__ = [
    "MIB",
    "StorageWidths",
    "TrafficReport",
    "matrix_traffic",
    "predicted_speedup",
    "relative_performance",
    "relative_throughput",
    "spmv_traffic",
]
