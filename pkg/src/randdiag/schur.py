"""Complex Schur decomposition: Hessenberg reduction plus shifted QR.

The comparison baseline for the randomized diagonalizer.  Single-shift
complex QR with Wilkinson shifts and an exceptional shift every 10 stalled
sweeps; subdiagonal entries are zeroed exactly on deflation.
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from .eigh import ConvergenceError
from .linalg import as_matrix

__all__ = ["SchurDecomposition", "hessenberg", "schur"]


@dataclass(frozen=True)
class SchurDecomposition:
    """Unitary ``u`` and upper-triangular ``t`` with ``a ~= u @ t @ u*``."""

    u: np.ndarray
    t: np.ndarray


def hessenberg(a):
    """Unitary reduction to upper Hessenberg form.

    Returns ``(q, hs)`` with ``hs[i, j] = 0`` exactly for ``i > j + 1`` and
    ``a ~= q @ hs @ q*``.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"hessenberg requires a square matrix, got {a.shape}")
    n = a.shape[0]
    if n == 1:
        return np.eye(1, dtype=np.complex128), a.copy()
    return backend.kernels.hessenberg(a)


def schur(a):
    """Complex Schur decomposition of a square matrix.

    The diagonal of ``t`` carries the eigenvalue multiset of ``a`` in
    whatever order deflation produces.  Raises :class:`ConvergenceError`
    after ``30 * n`` total QR sweeps without full deflation.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"schur requires a square matrix, got {a.shape}")
    n = a.shape[0]
    if n == 1:
        return SchurDecomposition(u=np.eye(1, dtype=np.complex128), t=a.copy())
    q, h = backend.kernels.hessenberg(a)
    ut = np.ascontiguousarray(q.T)
    stuck = backend.kernels.schur_qr(h, ut, 30 * n)
    if stuck >= 0:
        raise ConvergenceError(
            stuck, f"QR iteration exceeded {30 * n} sweeps at active index {stuck}"
        )
    t = np.triu(h)
    return SchurDecomposition(u=np.ascontiguousarray(ut.T), t=t)
