"""Error measures: off-diagonal error, optimal eigenvalue matching.

The eigenvalue relative error matches two complex spectra through a linear
sum assignment on squared-modulus costs, so the assignment objective is
exactly the squared 2-norm of the matched difference.
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from .linalg import adjoint, as_matrix, frobenius_norm, matmul, offdiag

__all__ = ["AssignmentResult", "offdiag_error", "hungarian", "eig_relative_error"]


@dataclass(frozen=True)
class AssignmentResult:
    """Optimal assignment: ``permutation[i]`` is the column matched to row i."""

    permutation: np.ndarray
    total_cost: float


def offdiag_error(a, u):
    """``||offdiag(u* a u)||_F``, the primary accuracy measure."""
    a = as_matrix(a, "a")
    u = as_matrix(u, "u")
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"offdiag_error requires square a, got {a.shape}")
    if u.shape[0] != u.shape[1] or u.shape[0] != a.shape[0]:
        raise ValueError(
            f"offdiag_error dimension mismatch: a {a.shape}, u {u.shape}"
        )
    b = matmul(adjoint(u), matmul(a, u))
    return frobenius_norm(offdiag(b))


def hungarian(cost):
    """Minimum-total-cost assignment of rows to columns.

    ``cost`` must be a square real matrix with finite entries.  Solved by an
    O(n^3) shortest-augmenting-path method (Jonker-Volgenant style).
    """
    cost = np.ascontiguousarray(np.asarray(cost, dtype=np.float64))
    if cost.ndim != 2 or cost.shape[0] != cost.shape[1]:
        raise ValueError(f"hungarian requires a square cost matrix, got {cost.shape}")
    if not np.all(np.isfinite(cost)):
        raise ValueError("hungarian requires finite cost entries")
    perm = backend.kernels.lsap(cost)
    total = float(cost[np.arange(cost.shape[0]), perm].sum())
    return AssignmentResult(permutation=perm, total_cost=total)


def eig_relative_error(d1, d2):
    """Relative 2-norm error between spectra under optimal matching.

    Builds ``cost[i, j] = |d1_i - d2_j|^2``, solves the assignment, and
    returns ``||d1 - P d2||_2 / ||d1||_2`` for the minimizing permutation P.
    """
    d1 = np.asarray(d1, dtype=np.complex128).ravel()
    d2 = np.asarray(d2, dtype=np.complex128).ravel()
    if d1.shape[0] != d2.shape[0]:
        raise ValueError(
            f"spectrum length mismatch: {d1.shape[0]} vs {d2.shape[0]}"
        )
    if d1.shape[0] < 1:
        raise ValueError("spectra must be nonempty")
    ref = float(np.linalg.norm(d1))
    if ref == 0.0:
        raise ValueError("reference spectrum has zero norm")
    diff = d1[:, None] - d2[None, :]
    cost = diff.real**2 + diff.imag**2
    result = hungarian(cost)
    matched = d1 - d2[result.permutation]
    value = float(np.linalg.norm(matched)) / ref
    # same objective, two summation routes; they must agree
    alt = np.sqrt(max(result.total_cost, 0.0)) / ref
    assert abs(value - alt) <= 1e-12 * max(value, 1.0)
    return value
