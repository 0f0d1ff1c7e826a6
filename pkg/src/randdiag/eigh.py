"""Spectral decomposition of complex Hermitian matrices.

Classical two-stage solver: complex Householder tridiagonalization with a
diagonal phase scaling that makes the subdiagonal real nonnegative, then
implicit-shift QL (Wilkinson shift) on the real tridiagonal matrix with the
rotations accumulated into the complex basis.  Fully self-contained, O(n^3).
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from .linalg import as_matrix

__all__ = ["EigenDecomposition", "ConvergenceError", "tridiagonalize", "eigh"]


class ConvergenceError(RuntimeError):
    """Iterative phase failed to deflate within the sweep budget."""

    def __init__(self, index, message=None):
        self.index = int(index)
        super().__init__(
            message or f"iteration failed to converge at index {self.index}"
        )


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in nondecreasing order and a unitary eigenvector matrix.

    ``vectors[:, k]`` is the eigenvector for ``values[k]``; each column is
    scaled so its largest-modulus entry is real positive.
    """

    values: np.ndarray
    vectors: np.ndarray


def tridiagonalize(m):
    """Reduce a Hermitian matrix to real symmetric tridiagonal form.

    Returns ``(q, d, e)``: ``q`` unitary, ``d`` the real diagonal, ``e`` the
    real nonnegative subdiagonal (length n-1), with ``m ~= q @ T @ q*``.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"tridiagonalize requires a square matrix, got {m.shape}")
    n = m.shape[0]
    if n == 1:
        return (
            np.eye(1, dtype=np.complex128),
            np.array([m[0, 0].real]),
            np.empty(0),
        )
    return backend.kernels.tridiagonalize(m)


def eigh(m):
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrized internally as ``(m + m*)/2``; eigenvalues are
    those of the symmetrized matrix.  Raises :class:`ConvergenceError` if
    the QL iteration exceeds 30 sweeps for some eigenvalue.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"eigh requires a square matrix, got {m.shape}")
    n = m.shape[0]
    herm = np.ascontiguousarray((m + m.conj().T) / 2.0)
    if n == 1:
        return EigenDecomposition(
            values=np.array([herm[0, 0].real]),
            vectors=np.eye(1, dtype=np.complex128),
        )
    q, d, e = backend.kernels.tridiagonalize(herm)
    epad = np.zeros(n)
    epad[: n - 1] = e
    vt = np.ascontiguousarray(q.T)
    stuck = backend.kernels.tql2(d, epad, vt)
    if stuck >= 0:
        raise ConvergenceError(
            stuck, f"QL iteration exceeded 30 sweeps at eigenvalue index {stuck}"
        )
    order = np.argsort(d, kind="stable")
    values = d[order]
    vectors = np.ascontiguousarray(vt[order].T)
    _normalize_column_phases(vectors)
    return EigenDecomposition(values=values, vectors=vectors)


def _normalize_column_phases(vectors):
    """Scale each column so its largest-modulus entry is real positive."""
    n = vectors.shape[1]
    mags = np.abs(vectors)
    idx = np.argmax(mags, axis=0)
    pick = vectors[idx, np.arange(n)]
    absv = np.abs(pick)
    safe = np.where(absv > 0.0, absv, 1.0)
    phases = np.where(absv > 0.0, pick / safe, 1.0 + 0.0j)
    vectors *= phases.conj()[None, :]
