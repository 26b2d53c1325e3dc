"""Operator norms and commutators of truncated sparse matrices."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import svds

DENSE_LIMIT = 2000
SPARSE_TOL = 1e-8


def _block_norm(B: sp.csr_matrix) -> float:
    if max(B.shape) <= DENSE_LIMIT:
        return float(np.linalg.norm(B.toarray(), 2))
    # fixed start vector keeps ARPACK deterministic
    v0 = np.ones(min(B.shape)) / np.sqrt(min(B.shape))
    return float(svds(B, k=1, tol=SPARSE_TOL, v0=v0, return_singular_vectors=False)[0])


def operator_norm(A) -> float:
    """Largest singular value of a square sparse matrix.

    The matrix is split into the connected components of its sparsity graph
    (a direct sum, so the norm is the largest block norm).  Blocks up to
    ``DENSE_LIMIT`` rows use a dense SVD.
    """
    A = sp.csr_matrix(A)
    if A.nnz == 0:
        return 0.0
    pattern = abs(A) + abs(A).T
    count, labels = connected_components(pattern, directed=False)
    order = np.argsort(labels, kind="stable")
    bounds = np.searchsorted(labels[order], np.arange(count + 1))
    best = 0.0
    for c in range(count):
        idx = order[bounds[c]:bounds[c + 1]]
        if len(idx) == 1 and A[idx[0], idx[0]] == 0:
            continue
        best = max(best, _block_norm(A[idx][:, idx]))
    return best


def commutator(A, dvec) -> sp.csr_matrix:
    """``[diag(d), A]``: entry ``(t, s)`` becomes ``A[t, s] (d[t] - d[s])``."""
    C = sp.coo_matrix(A, copy=True)
    d = np.asarray(dvec, dtype=float)
    C.data = C.data * (d[C.row] - d[C.col])
    C = C.tocsr()
    C.eliminate_zeros()
    return C


def build(n: int, entries) -> sp.csr_matrix:
    """Square sparse matrix from ``(row, col, value)`` triples (summed)."""
    rows, cols, vals = [], [], []
    for r, c, v in entries:
        rows.append(r)
        cols.append(c)
        vals.append(v)
    return sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
