"""Dense complex matrix primitives.

Matrices are plain 2-D C-contiguous ``numpy.complex128`` arrays (row-major,
``data[i*cols + j]`` addressing).  All operations are pure: inputs are never
mutated and results are freshly allocated.
"""

import math

import numpy as np

from . import backend

__all__ = [
    "as_matrix",
    "adjoint",
    "matmul",
    "kron",
    "hermitian_split",
    "frobenius_norm",
    "offdiag",
    "normality_residual",
    "unitarity_residual",
]


def as_matrix(a, name="matrix"):
    """Coerce to a C-contiguous complex128 2-D array, validating shape."""
    out = np.asarray(a, dtype=np.complex128)
    if out.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got ndim={out.ndim}")
    if out.shape[0] < 1 or out.shape[1] < 1:
        raise ValueError(f"{name} must have positive dimensions, got {out.shape}")
    return np.ascontiguousarray(out)


def _require_square(a, name="matrix"):
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")


def adjoint(a):
    """Hermitian transpose: ``result[j, i] = conj(a[i, j])``."""
    a = as_matrix(a)
    return np.ascontiguousarray(a.conj().T)


def matmul(a, b):
    """Matrix product ``a @ b``; raises on inner-dimension mismatch."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape[1] != b.shape[0]:
        raise ValueError(
            f"matmul dimension mismatch: {a.shape} x {b.shape}"
        )
    return backend.kernels.matmul(a, b)


def kron(a, b):
    """Kronecker product: block ``(i, j)`` equals ``a[i, j] * b``."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    return np.ascontiguousarray(np.kron(a, b))


def hermitian_split(a):
    """Split a square matrix into Hermitian and skew-Hermitian parts.

    Returns ``(h, s)`` with ``h = (a + a*)/2`` Hermitian, ``s = (a - a*)/2``
    skew-Hermitian and ``h + s`` reproducing ``a`` up to one rounding per
    entry.
    """
    a = as_matrix(a)
    _require_square(a)
    astar = a.conj().T
    h = (a + astar) / 2.0
    s = (a - astar) / 2.0
    return np.ascontiguousarray(h), np.ascontiguousarray(s)


def frobenius_norm(a):
    """Frobenius norm: square root of the sum of squared moduli."""
    a = as_matrix(a)
    return float(math.sqrt(np.vdot(a, a).real))


def offdiag(a):
    """Copy of a square matrix with its diagonal set to zero."""
    a = as_matrix(a)
    _require_square(a)
    out = a.copy()
    np.fill_diagonal(out, 0.0)
    return out


def normality_residual(a):
    """``||a a* - a* a||_F``; zero (up to roundoff) iff ``a`` is normal."""
    a = as_matrix(a)
    _require_square(a)
    astar = adjoint(a)
    comm = backend.kernels.matmul(a, astar) - backend.kernels.matmul(astar, a)
    return frobenius_norm(comm)


def unitarity_residual(u):
    """``||u* u - I||_F``."""
    u = as_matrix(u)
    _require_square(u)
    gram = backend.kernels.matmul(adjoint(u), u)
    gram[np.diag_indices_from(gram)] -= 1.0
    return frobenius_norm(gram)
