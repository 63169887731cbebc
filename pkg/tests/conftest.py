import pytest

from dacsr import TripletMatrix, csr_from_triplets

# 4x4 sample with 5 entries: bandwidth 1, one row with two entries
SAMPLE_ENTRIES = [
    (0, 0, 1.0),
    (1, 2, 2.0),
    (2, 1, 3.0),
    (2, 3, 4.0),
    (3, 3, 5.0),
]


@pytest.fixture
def sample_triplets():
    return TripletMatrix.from_entries(4, 4, SAMPLE_ENTRIES)


@pytest.fixture
def sample_csr(sample_triplets):
    return csr_from_triplets(sample_triplets)


@pytest.fixture
def sample_mtx(tmp_path):
    path = tmp_path / "sample.mtx"
    lines = ["%%MatrixMarket matrix coordinate real general", "4 4 5"]
    lines += [f"{r + 1} {c + 1} {v}" for r, c, v in SAMPLE_ENTRIES]
    path.write_text("\n".join(lines) + "\n")
    return str(path)
