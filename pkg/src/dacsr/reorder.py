"""Bandwidth reduction: reverse Cuthill-McKee ordering and PAP^T application.

The ordering works on the undirected graph of the pattern of A + A^T with
self-loops removed.  Every tie is broken deterministically (ascending
degree, then ascending index), so repeated runs produce identical
permutations.
"""

from dataclasses import dataclass

import numpy as np

from .core import _assemble_csr, entry_rows
from .errors import DimensionMismatch, NotSquare


@dataclass(frozen=True, eq=False)
class Permutation:
    """Bijection on [0, n): ``perm`` maps new index to old, ``inv`` old to new."""

    perm: np.ndarray
    inv: np.ndarray

    def __post_init__(self):
        perm = np.asarray(self.perm, dtype=np.int64)
        inv = np.asarray(self.inv, dtype=np.int64)
        n = len(perm)
        if len(inv) != n:
            raise ValueError("perm and inv must have equal length")
        ident = np.arange(n, dtype=np.int64)
        if not np.array_equal(np.sort(perm), ident):
            raise ValueError("perm is not a bijection on [0, n)")
        if not np.array_equal(inv[perm], ident):
            raise ValueError("inv does not invert perm")
        for a in (perm, inv):
            if a.flags.writeable:
                a.flags.writeable = False
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "inv", inv)

    @classmethod
    def from_new_to_old(cls, order):
        order = np.asarray(order, dtype=np.int64)
        inv = np.empty(len(order), dtype=np.int64)
        inv[order] = np.arange(len(order), dtype=np.int64)
        return cls(order, inv)

    @classmethod
    def identity(cls, n):
        ident = np.arange(n, dtype=np.int64)
        return cls(ident, ident.copy())

    @property
    def n(self):
        return len(self.perm)


@dataclass(frozen=True, eq=False)
class Adjacency:
    """Undirected adjacency in CSR layout: sorted neighbor lists, no self-loops."""

    n: int
    indptr: np.ndarray
    indices: np.ndarray

    def neighbors(self, u):
        return self.indices[self.indptr[u]:self.indptr[u + 1]]


def symmetrized_adjacency(a):
    """Undirected graph of the pattern of A + A^T, self-loops removed.

    Raises NotSquare for rectangular matrices.
    """
    if a.nrows != a.ncols:
        raise NotSquare(f"adjacency requires a square matrix, got {a.nrows}x{a.ncols}")
    n = a.nrows
    rows = entry_rows(a.rowptr)
    cols = a.colids.astype(np.int64, copy=False)
    off = rows != cols
    u = np.concatenate([rows[off], cols[off]])
    v = np.concatenate([cols[off], rows[off]])
    order = np.lexsort((v, u))
    u = u[order]
    v = v[order]
    if len(u):
        keep = np.empty(len(u), dtype=bool)
        keep[0] = True
        keep[1:] = (u[1:] != u[:-1]) | (v[1:] != v[:-1])
        u = u[keep]
        v = v[keep]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(u, minlength=n), out=indptr[1:])
    indptr.flags.writeable = False
    v = np.ascontiguousarray(v)
    v.flags.writeable = False
    return Adjacency(n, indptr, v)


def _level_structure(adj, start, level):
    """BFS from ``start``; fills ``level`` (callers reset it) and returns
    the visit order plus the eccentricity of ``start``."""
    indptr, indices = adj.indptr, adj.indices
    order = [start]
    level[start] = 0
    head = 0
    ecc = 0
    while head < len(order):
        node = order[head]
        head += 1
        d = level[node] + 1
        for nb in indices[indptr[node]:indptr[node + 1]]:
            if level[nb] < 0:
                level[nb] = d
                if d > ecc:
                    ecc = d
                order.append(int(nb))
    return order, ecc


def _min_degree_node(nodes, degrees):
    nodes = np.asarray(nodes, dtype=np.int64)
    return int(nodes[np.lexsort((nodes, degrees[nodes]))][0])


def _pseudo_peripheral(adj, degrees, component, level):
    """George-Liu style start node: repeat BFS toward a minimum-degree node
    of the deepest level until the eccentricity stops growing."""
    r = _min_degree_node(component, degrees)
    order, ecc = _level_structure(adj, r, level)
    last = [u for u in order if level[u] == ecc]
    for u in order:
        level[u] = -1
    while True:
        cand = _min_degree_node(last, degrees)
        order, ecc_c = _level_structure(adj, cand, level)
        last_c = [u for u in order if level[u] == ecc_c]
        for u in order:
            level[u] = -1
        if ecc_c > ecc:
            r, ecc, last = cand, ecc_c, last_c
        else:
            return r


def rcm(a):
    """Reverse Cuthill-McKee permutation of a square matrix.

    Per connected component of the symmetrized pattern, a Cuthill-McKee
    BFS is run from a pseudo-peripheral start node, visiting neighbors in
    ascending degree (ties by ascending index).  Components are
    concatenated in ascending order of their start node and the combined
    ordering is reversed.

    Returns
    -------
    Permutation
        Maps new indices to old; apply with :func:`permute_symmetric`.
    """
    adj = symmetrized_adjacency(a)
    n = adj.n
    degrees = np.diff(adj.indptr)
    level = np.full(n, -1, dtype=np.int64)

    components = []
    seen = np.zeros(n, dtype=bool)
    for s in range(n):
        if not seen[s]:
            order, _ = _level_structure(adj, s, level)
            for u in order:
                level[u] = -1
                seen[u] = True
            components.append(np.array(order, dtype=np.int64))

    starts = [_pseudo_peripheral(adj, degrees, comp, level) for comp in components]

    placed = np.zeros(n, dtype=bool)
    cm_order = []
    indptr, indices = adj.indptr, adj.indices
    for ci in np.argsort(starts):
        start = starts[ci]
        queue = [start]
        placed[start] = True
        head = 0
        while head < len(queue):
            node = queue[head]
            head += 1
            nb = indices[indptr[node]:indptr[node + 1]]
            nb = nb[~placed[nb]]
            if len(nb):
                nb = nb[np.lexsort((nb, degrees[nb]))]
                placed[nb] = True
                queue.extend(int(x) for x in nb)
        cm_order.extend(queue)

    perm = np.array(cm_order, dtype=np.int64)[::-1]
    return Permutation.from_new_to_old(np.ascontiguousarray(perm))


def permute_symmetric(a, p):
    """Apply a symmetric permutation: result(r, c) = a(perm[r], perm[c]).

    Preserves nnz, storage widths, and canonical form.
    """
    if a.nrows != a.ncols:
        raise DimensionMismatch(
            f"symmetric permutation requires a square matrix, got {a.nrows}x{a.ncols}"
        )
    if p.n != a.nrows:
        raise DimensionMismatch(
            f"permutation of size {p.n} does not match dimension {a.nrows}"
        )
    rows = entry_rows(a.rowptr)
    cols = a.colids.astype(np.int64, copy=False)
    new_rows = p.inv[rows]
    new_cols = p.inv[cols]
    return _assemble_csr(
        a.nrows, a.ncols, new_rows, new_cols, a.values.astype(np.float64),
        a.oindex_width, a.iindex_width, a.scalar_width, sum_duplicates=False,
    )


__all__ = [
    "Adjacency",
    "Permutation",
    "permute_symmetric",
    "rcm",
    "symmetrized_adjacency",
]
