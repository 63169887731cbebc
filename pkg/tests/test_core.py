import numpy as np
import pytest

from dacsr import (
    CsrMatrix,
    TripletMatrix,
    bandwidth,
    csr_from_triplets,
    index_max,
    to_csr,
    to_dacsr,
)
from dacsr.errors import (
    BandwidthExceedsIndexRange,
    EntryOutOfBounds,
    IndexRangeExceeded,
)
from helpers import (
    dense_bandwidth,
    dense_from_entries,
    dense_from_matrix,
    matrix_from_entries,
    random_entries,
)


class TestCsrFromTriplets:
    def test_sample_layout(self, sample_csr):
        assert sample_csr.rowptr.tolist() == [0, 1, 2, 4, 5]
        assert sample_csr.colids.tolist() == [0, 2, 1, 3, 3]
        assert sample_csr.values.tolist() == [1.0, 2.0, 3.0, 4.0, 5.0]
        assert sample_csr.rowptr.dtype == np.int32
        assert sample_csr.colids.dtype == np.int32
        assert sample_csr.values.dtype == np.float64

    def test_empty(self):
        t = TripletMatrix.from_entries(3, 3, [])
        a = csr_from_triplets(t)
        assert a.rowptr.tolist() == [0, 0, 0, 0]
        assert a.nnz == 0

    def test_duplicates_summed(self):
        t = TripletMatrix.from_entries(2, 2, [(0, 0, 1.5), (0, 0, 2.5)])
        a = csr_from_triplets(t)
        assert a.nnz == 1
        assert a.values.tolist() == [4.0]

    def test_unsorted_input_canonicalized(self):
        t = TripletMatrix.from_entries(3, 4, [(2, 3, 1.0), (0, 2, 2.0), (0, 1, 3.0)])
        a = csr_from_triplets(t)
        assert a.rowptr.tolist() == [0, 2, 2, 3]
        assert a.colids.tolist() == [1, 2, 3]
        assert a.values.tolist() == [3.0, 2.0, 1.0]

    def test_explicit_zero_kept(self):
        t = TripletMatrix.from_entries(2, 2, [(0, 1, 0.0), (1, 1, 2.0)])
        a = csr_from_triplets(t)
        assert a.nnz == 2
        assert a.values.tolist() == [0.0, 2.0]

    def test_duplicates_summing_to_zero_kept(self):
        t = TripletMatrix.from_entries(1, 1, [(0, 0, 1.0), (0, 0, -1.0)])
        a = csr_from_triplets(t)
        assert a.nnz == 1
        assert a.values.tolist() == [0.0]

    def test_entry_out_of_bounds(self):
        with pytest.raises(EntryOutOfBounds):
            TripletMatrix.from_entries(2, 2, [(2, 0, 1.0)])
        with pytest.raises(EntryOutOfBounds):
            TripletMatrix.from_entries(2, 2, [(0, -1, 1.0)])

    def test_ncols_exceeds_iindex(self):
        t = TripletMatrix.from_entries(1, 40000, [(0, 0, 1.0)])
        with pytest.raises(IndexRangeExceeded):
            csr_from_triplets(t, iindex=16)
        # boundary: ncols = 2**15 still fits 16-bit signed columns
        t = TripletMatrix.from_entries(1, 2 ** 15, [(0, 2 ** 15 - 1, 1.0)])
        a = csr_from_triplets(t, iindex=16)
        assert a.colids.tolist() == [32767]

    def test_nnz_exceeds_oindex(self):
        entries = [(0, c, 1.0) for c in range(128)]
        t = TripletMatrix.from_entries(1, 128, entries)
        with pytest.raises(IndexRangeExceeded):
            csr_from_triplets(t, oindex=8)
        a = csr_from_triplets(t, oindex=16)
        assert a.nnz == 128

    def test_oracle_agreement(self):
        rng = np.random.default_rng(7)
        for trial in range(25):
            nrows = int(rng.integers(1, 30))
            ncols = int(rng.integers(1, 30))
            entries = random_entries(rng, nrows, ncols, 0.2, duplicate_frac=0.2)
            a = matrix_from_entries(nrows, ncols, entries)
            # positions survive as pattern; dense values match summed dups
            dense = dense_from_entries(nrows, ncols, entries)
            rebuilt = dense_from_matrix(a)
            assert np.allclose(rebuilt, dense, rtol=0, atol=1e-15)
            assert a.nnz == len({(r, c) for r, c, _ in entries})


class TestBandwidth:
    def test_sample(self, sample_csr):
        assert bandwidth(sample_csr) == 1

    def test_identity(self):
        a = matrix_from_entries(5, 5, [(i, i, 1.0) for i in range(5)])
        assert bandwidth(a) == 0

    def test_empty(self):
        a = matrix_from_entries(4, 4, [])
        assert bandwidth(a) == 0

    def test_dense_scan_oracle(self):
        rng = np.random.default_rng(3)
        for trial in range(10):
            entries = random_entries(rng, 50, 50, 0.05)
            a = matrix_from_entries(50, 50, entries)
            assert bandwidth(a) == dense_bandwidth(dense_from_matrix(a))

    def test_rectangular(self):
        a = matrix_from_entries(2, 10, [(0, 9, 1.0)])
        assert bandwidth(a) == 9


class TestDacsrConversion:
    def test_sample_offsets(self, sample_csr):
        d = to_dacsr(sample_csr, 16)
        assert d.colids.tolist() == [0, 1, -1, 1, 0]
        assert d.colids.dtype == np.int16
        assert d.rowptr.tolist() == sample_csr.rowptr.tolist()
        assert d.values.tolist() == sample_csr.values.tolist()

    def test_identity_offsets_zero(self):
        a = matrix_from_entries(6, 6, [(i, i, float(i + 1)) for i in range(6)])
        d = to_dacsr(a, 8)
        assert d.colids.tolist() == [0] * 6

    def test_bandwidth_exceeds_range(self):
        a = matrix_from_entries(1, 40001, [(0, 40000, 1.0)])
        with pytest.raises(BandwidthExceedsIndexRange):
            to_dacsr(a, 16)

    def test_signed_range_boundary(self):
        # w = 2**15 - 1 fits 16-bit offsets, w = 2**15 is rejected
        fits = matrix_from_entries(1, 2 ** 15, [(0, 2 ** 15 - 1, 1.0)])
        d = to_dacsr(fits, 16)
        assert d.colids.tolist() == [index_max(16)]
        toobig = matrix_from_entries(1, 2 ** 15 + 1, [(0, 2 ** 15, 1.0)])
        with pytest.raises(BandwidthExceedsIndexRange):
            to_dacsr(toobig, 16)

    def test_roundtrip_sample(self, sample_csr):
        d = to_dacsr(sample_csr, 16)
        back = to_csr(d, 32)
        assert back == sample_csr

    def test_roundtrip_random(self):
        rng = np.random.default_rng(11)
        for trial in range(100):
            nrows = int(rng.integers(1, 64))
            ncols = int(rng.integers(1, 64))
            entries = random_entries(rng, nrows, ncols, 0.15)
            a = matrix_from_entries(nrows, ncols, entries)
            back = to_csr(to_dacsr(a, 16), 32)
            assert back == a
            assert back.nnz == a.nnz

    def test_to_csr_width_check(self):
        a = matrix_from_entries(40010, 40010, [(40000, 40005, 1.0)])
        d = to_dacsr(a, 16)
        with pytest.raises(IndexRangeExceeded):
            to_csr(d, 16)
        assert to_csr(d, 32) == a

    def test_negative_offsets_map_back(self):
        a = matrix_from_entries(5, 5, [(4, 0, 2.0), (4, 4, 3.0)])
        d = to_dacsr(a, 8)
        assert d.colids.tolist() == [-4, 0]
        assert to_csr(d, 32) == a


class TestCanonicalValidation:
    def test_rowptr_must_start_at_zero(self):
        with pytest.raises(ValueError):
            CsrMatrix(1, 1, np.array([1, 1], np.int32),
                      np.array([0], np.int32), np.array([1.0]))

    def test_rowptr_monotone(self):
        with pytest.raises(ValueError):
            CsrMatrix(2, 2, np.array([0, 2, 1], np.int32),
                      np.array([0], np.int32), np.array([1.0]))

    def test_colids_sorted_strictly(self):
        with pytest.raises(ValueError):
            CsrMatrix(1, 3, np.array([0, 2], np.int32),
                      np.array([1, 0], np.int32), np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            CsrMatrix(1, 3, np.array([0, 2], np.int32),
                      np.array([1, 1], np.int32), np.array([1.0, 2.0]))

    def test_colids_in_range(self):
        with pytest.raises(ValueError):
            CsrMatrix(1, 2, np.array([0, 1], np.int32),
                      np.array([2], np.int32), np.array([1.0]))

    def test_immutable_after_construction(self, sample_csr):
        with pytest.raises(ValueError):
            sample_csr.colids[0] = 3
        with pytest.raises(ValueError):
            sample_csr.values[0] = -1.0

    def test_constructor_copies_writable_input(self):
        rowptr = np.array([0, 1], np.int32)
        colids = np.array([0], np.int32)
        values = np.array([1.0])
        a = CsrMatrix(1, 1, rowptr, colids, values)
        values[0] = 99.0  # caller's array stays writable; matrix is isolated
        assert a.values.tolist() == [1.0]
