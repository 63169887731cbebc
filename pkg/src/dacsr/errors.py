"""Exception types shared across the package."""


class DacsrError(Exception):
    """Base class for all errors raised by this package."""


class IndexRangeExceeded(DacsrError):
    """A dimension or entry count does not fit the chosen index width."""


class EntryOutOfBounds(DacsrError):
    """An entry lies outside the declared matrix shape."""


class BandwidthExceedsIndexRange(DacsrError):
    """Matrix bandwidth is too large for the requested offset width."""


class NotSquare(DacsrError):
    """Operation requires a square matrix."""


class DimensionMismatch(DacsrError):
    """Array shapes or permutation size do not match the matrix."""


class UnsupportedScalarWidth(DacsrError):
    """Kernels only execute 32- and 64-bit floating point scalars."""


class NonPositiveTime(DacsrError):
    """Performance ratios require strictly positive runtimes."""


class NonPositiveInput(DacsrError):
    """Throughput ratios require strictly positive traffic and times."""


class UnsupportedFormat(DacsrError):
    """Matrix Market header requests an unsupported object/format/field."""


class ParseError(DacsrError):
    """Malformed Matrix Market content, pointing at the offending line."""

    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason
