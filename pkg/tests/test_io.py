import io as stdio
import json

import numpy as np
import pytest

from dacsr import (
    ResultRecord,
    csr_from_triplets,
    read_matrix_market,
    write_matrix_market,
    write_results,
)
from dacsr.errors import ParseError, UnsupportedFormat
from helpers import matrix_from_entries, random_entries


def parse_text(text):
    return read_matrix_market(stdio.StringIO(text))


class TestRead:
    def test_sample_file(self, sample_mtx):
        t = read_matrix_market(sample_mtx)
        assert t.nrows == t.ncols == 4
        entries = sorted(zip(t.rows, t.cols, t.values))
        assert entries == [(0, 0, 1.0), (1, 2, 2.0), (2, 1, 3.0), (2, 3, 4.0),
                           (3, 3, 5.0)]

    def test_comments_blank_lines_scientific(self):
        t = parse_text(
            "%%MatrixMarket matrix coordinate real general\n"
            "% a comment\n"
            "\n"
            "2 2 2\n"
            "% another\n"
            "1 1 1.5e-3\n"
            "\n"
            "2 2 -2E+1\n"
        )
        assert sorted(zip(t.rows, t.cols, t.values)) == [(0, 0, 0.0015),
                                                         (1, 1, -20.0)]

    def test_symmetric_expansion(self):
        t = parse_text(
            "%%MatrixMarket matrix coordinate real symmetric\n"
            "2 2 1\n"
            "2 1 3.5\n"
        )
        assert sorted(zip(t.rows, t.cols, t.values)) == [(0, 1, 3.5), (1, 0, 3.5)]

    def test_symmetric_diagonal_not_doubled(self):
        t = parse_text(
            "%%MatrixMarket matrix coordinate real symmetric\n"
            "2 2 2\n"
            "1 1 1.0\n"
            "2 1 2.0\n"
        )
        assert t.nnz == 3

    def test_skew_symmetric(self):
        t = parse_text(
            "%%MatrixMarket matrix coordinate real skew-symmetric\n"
            "3 3 1\n"
            "2 1 4.0\n"
        )
        assert sorted(zip(t.rows, t.cols, t.values)) == [(0, 1, -4.0), (1, 0, 4.0)]

    def test_skew_diagonal_rejected(self):
        with pytest.raises(ParseError) as err:
            parse_text(
                "%%MatrixMarket matrix coordinate real skew-symmetric\n"
                "2 2 1\n"
                "1 1 1.0\n"
            )
        assert err.value.line == 3

    def test_pattern_field(self):
        t = parse_text(
            "%%MatrixMarket matrix coordinate pattern general\n"
            "3 3 1\n"
            "3 2\n"
        )
        assert list(zip(t.rows, t.cols, t.values)) == [(2, 1, 1.0)]

    def test_integer_field(self):
        t = parse_text(
            "%%MatrixMarket matrix coordinate integer general\n"
            "1 1 1\n"
            "1 1 7\n"
        )
        assert t.values.tolist() == [7.0]

    def test_unsupported_formats(self):
        with pytest.raises(UnsupportedFormat):
            parse_text("%%MatrixMarket matrix array real general\n")
        with pytest.raises(UnsupportedFormat):
            parse_text("%%MatrixMarket matrix coordinate complex general\n")
        with pytest.raises(UnsupportedFormat):
            parse_text("%%MatrixMarket matrix coordinate real hermitian\n")
        with pytest.raises(UnsupportedFormat):
            parse_text("%%MatrixMarket vector coordinate real general\n")

    def test_bad_banner(self):
        with pytest.raises(ParseError) as err:
            parse_text("%MatrixMarket matrix coordinate real general\n1 1 0\n")
        assert err.value.line == 1

    def test_out_of_range_index_names_line(self):
        with pytest.raises(ParseError) as err:
            parse_text(
                "%%MatrixMarket matrix coordinate real general\n"
                "% pad\n"
                "2 2 2\n"
                "1 1 1.0\n"
                "3 1 1.0\n"
            )
        assert err.value.line == 5
        with pytest.raises(ParseError):
            parse_text(
                "%%MatrixMarket matrix coordinate real general\n"
                "2 2 1\n"
                "1 0 1.0\n"
            )

    def test_entry_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_text(
                "%%MatrixMarket matrix coordinate real general\n"
                "2 2 2\n"
                "1 1 1.0\n"
            )
        with pytest.raises(ParseError):
            parse_text(
                "%%MatrixMarket matrix coordinate real general\n"
                "2 2 1\n"
                "1 1 1.0\n"
                "2 2 1.0\n"
            )

    def test_bad_tokens(self):
        with pytest.raises(ParseError):
            parse_text(
                "%%MatrixMarket matrix coordinate real general\n"
                "2 2 1\n"
                "1 1\n"
            )
        with pytest.raises(ParseError):
            parse_text(
                "%%MatrixMarket matrix coordinate real general\n"
                "2 2 1\n"
                "1 1 abc\n"
            )
        with pytest.raises(ParseError):
            parse_text(
                "%%MatrixMarket matrix coordinate real general\n"
                "2 2\n"
            )

    def test_case_insensitive_banner(self):
        t = parse_text(
            "%%matrixmarket MATRIX Coordinate Real General\n"
            "1 1 1\n"
            "1 1 2.0\n"
        )
        assert t.values.tolist() == [2.0]


class TestWrite:
    def test_sample_size_line(self, sample_csr):
        buf = stdio.StringIO()
        write_matrix_market(sample_csr, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "%%MatrixMarket matrix coordinate real general"
        assert lines[1] == "4 4 5"
        assert len(lines) == 7

    def test_empty_matrix(self):
        buf = stdio.StringIO()
        write_matrix_market(matrix_from_entries(3, 3, []), buf)
        lines = buf.getvalue().splitlines()
        assert lines[1] == "3 3 0"
        assert len(lines) == 2

    def test_roundtrip_random(self, tmp_path):
        rng = np.random.default_rng(41)
        for trial in range(20):
            nrows = int(rng.integers(1, 40))
            ncols = int(rng.integers(1, 40))
            a = matrix_from_entries(nrows, ncols,
                                    random_entries(rng, nrows, ncols, 0.2))
            path = tmp_path / f"m{trial}.mtx"
            write_matrix_market(a, str(path))
            back = csr_from_triplets(read_matrix_market(str(path)))
            assert back == a

    def test_roundtrip_keeps_explicit_zero(self):
        a = matrix_from_entries(2, 2, [(0, 1, 0.0)])
        buf = stdio.StringIO()
        write_matrix_market(a, buf)
        back = csr_from_triplets(parse_text(buf.getvalue()))
        assert back == a


def _record(name="m", t=0.5):
    work = 180
    traffic = 1440
    return ResultRecord(
        matrix_name=name, format="csr", oindex_bytes=4, iindex_bytes=4,
        scalar_bytes=8, variant="naive", threads=1, traffic_bytes=traffic,
        work_flops=work, time_seconds=t, performance_flops_per_s=work / t,
        throughput_bytes_per_s=traffic / t, cache_bucket="L1d", best=True,
    )


class TestWriteResults:
    def test_empty_csv_header_only(self):
        buf = stdio.StringIO()
        write_results([], buf, format="csv")
        lines = buf.getvalue().splitlines()
        assert len(lines) == 1
        assert lines[0].startswith("matrix_name,format,oindex_bytes")

    def test_line_count_and_order(self):
        buf = stdio.StringIO()
        write_results([_record("a"), _record("b")], buf, format="csv")
        lines = buf.getvalue().splitlines()
        assert len(lines) == 3
        assert lines[1].startswith("a,") and lines[2].startswith("b,")

    def test_csv_float_17_digits(self):
        buf = stdio.StringIO()
        write_results([_record(t=1.0 / 3.0)], buf, format="csv")
        assert f"{1.0 / 3.0:.17g}" in buf.getvalue()

    def test_json_roundtrip(self):
        rec = _record(t=0.123456789123456789)
        buf = stdio.StringIO()
        write_results([rec], buf, format="json")
        parsed = json.loads(buf.getvalue())
        assert len(parsed) == 1
        assert parsed[0]["matrix_name"] == "m"
        assert parsed[0]["time_seconds"] == rec.time_seconds
        assert parsed[0]["best"] is True
        assert list(parsed[0]) == [
            "matrix_name", "format", "oindex_bytes", "iindex_bytes",
            "scalar_bytes", "variant", "threads", "traffic_bytes",
            "work_flops", "time_seconds", "performance_flops_per_s",
            "throughput_bytes_per_s", "cache_bucket", "best",
        ]

    def test_bad_format(self):
        with pytest.raises(ValueError):
            write_results([], stdio.StringIO(), format="xml")
