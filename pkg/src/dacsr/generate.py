"""Deterministic synthetic matrices for tests, benchmarks, and the CLI.

Banded generators produce matrices of exactly the requested bandwidth with
a connected pattern (the first off-diagonals are fully populated), so
reordering effectiveness can be judged against a known optimum.
"""

import numpy as np

from .core import TripletMatrix, csr_from_triplets
from .reorder import Permutation, permute_symmetric

_DEFAULT_WIDTHS = dict(oindex=32, iindex=32)


def _from_codes(n_rows, n_cols, codes, rng, scalar, oindex=32, iindex=32):
    codes = np.unique(codes)
    rows = codes // n_cols
    cols = codes % n_cols
    values = rng.uniform(0.5, 1.5, len(codes))
    t = TripletMatrix(n_rows, n_cols, rows, cols, values)
    return csr_from_triplets(t, oindex=oindex, iindex=iindex, scalar=scalar)


def tridiagonal(n, scalar=64):
    """Stiffness-style tridiagonal matrix: 2 on the diagonal, -1 beside it."""
    diag = np.arange(n, dtype=np.int64)
    rows = np.concatenate([diag, diag[:-1], diag[1:]])
    cols = np.concatenate([diag, diag[1:], diag[:-1]])
    values = np.concatenate([
        np.full(n, 2.0), np.full(max(n - 1, 0), -1.0), np.full(max(n - 1, 0), -1.0),
    ])
    t = TripletMatrix(n, n, rows, cols, values)
    return csr_from_triplets(t, scalar=scalar, **_DEFAULT_WIDTHS)


def banded_random(n, band, density=0.3, seed=0, scalar=64):
    """Random square matrix with bandwidth exactly ``band``.

    The diagonal and both first off-diagonals are fully populated (keeping
    the graph connected), one entry pair sits at distance ``band``, and the
    remaining in-band positions are sampled to roughly ``density`` of the
    band area.  The pattern is symmetric; values are not.
    """
    if not 0 <= band < max(n, 1):
        raise ValueError(f"band must be in [0, n), got {band} for n = {n}")
    rng = np.random.default_rng(seed)
    diag = np.arange(n, dtype=np.int64)
    codes = [diag * n + diag]
    if band >= 1:
        sub = diag[:-1]
        codes.append(sub * n + (sub + 1))
        codes.append((sub + 1) * n + sub)
        codes.append(np.array([0 * n + band, band * n + 0], dtype=np.int64))
    extra = int(density * n * (2 * band + 1))
    if extra and band >= 2:
        r = rng.integers(0, n, extra, dtype=np.int64)
        d = rng.integers(-band, band + 1, extra, dtype=np.int64)
        c = r + d
        ok = (c >= 0) & (c < n)
        r, c = r[ok], c[ok]
        codes.append(r * n + c)
        codes.append(c * n + r)
    return _from_codes(n, n, np.concatenate(codes), rng, scalar)


def random_sparse(nrows, ncols, density=0.1, seed=0, scalar=64,
                  explicit_zero_frac=0.0, oindex=32, iindex=32):
    """Uniformly random sparse matrix; may be rectangular.

    ``explicit_zero_frac`` of the sampled entries store the value 0.0 so
    the pattern carries explicit zeros.
    """
    rng = np.random.default_rng(seed)
    target = int(round(density * nrows * ncols))
    if target == 0 or nrows == 0 or ncols == 0:
        t = TripletMatrix(nrows, ncols, np.empty(0, np.int64),
                          np.empty(0, np.int64), np.empty(0, np.float64))
        return csr_from_triplets(t, oindex=oindex, iindex=iindex, scalar=scalar)
    r = rng.integers(0, nrows, target, dtype=np.int64)
    c = rng.integers(0, ncols, target, dtype=np.int64)
    codes = np.unique(r * ncols + c)
    rows = codes // ncols
    cols = codes % ncols
    values = rng.uniform(0.5, 1.5, len(codes))
    if explicit_zero_frac > 0:
        zero = rng.random(len(codes)) < explicit_zero_frac
        values[zero] = 0.0
    t = TripletMatrix(nrows, ncols, rows, cols, values)
    return csr_from_triplets(t, oindex=oindex, iindex=iindex, scalar=scalar)


def scrambled(a, seed=0):
    """Apply a random symmetric permutation; returns (matrix, permutation)."""
    rng = np.random.default_rng(seed)
    p = Permutation.from_new_to_old(rng.permutation(a.nrows).astype(np.int64))
    return permute_symmetric(a, p), p


def parse_generate_spec(spec):
    """Materialize a --generate spec like ``banded:n=200,band=8,seed=1``.

    Kinds: ``tridiagonal`` (n), ``banded`` (n, band, density, seed),
    ``scrambled`` (a banded matrix scrambled by a random permutation;
    same keys plus the scrambling uses seed+1).  Returns (name, matrix).
    """
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    params = {}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise ValueError(f"bad generate parameter {item!r} in {spec!r}")
            params[key.strip()] = value.strip()

    def grab(key, default=None, conv=int):
        if key in params:
            return conv(params.pop(key))
        if default is None:
            raise ValueError(f"generate spec {spec!r} needs {key}=")
        return default

    if kind == "tridiagonal":
        n = grab("n")
        mat = tridiagonal(n)
    elif kind == "banded":
        n = grab("n")
        band = grab("band")
        density = grab("density", 0.3, float)
        seed = grab("seed", 0)
        mat = banded_random(n, band, density=density, seed=seed)
    elif kind == "scrambled":
        n = grab("n")
        band = grab("band")
        density = grab("density", 0.3, float)
        seed = grab("seed", 0)
        mat, _ = scrambled(banded_random(n, band, density=density, seed=seed),
                           seed=seed + 1)
    else:
        raise ValueError(f"unknown generate kind {kind!r}")
    if params:
        raise ValueError(f"unknown generate parameters {sorted(params)} in {spec!r}")
    return spec, mat


__all__ = [
    "banded_random",
    "parse_generate_spec",
    "random_sparse",
    "scrambled",
    "tridiagonal",
]
