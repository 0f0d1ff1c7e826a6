"""Randomized diagonalization of complex normal matrices.

Split the input into Hermitian and skew-Hermitian parts, draw two
independent standard-normal coefficients, and diagonalize the Hermitian
combination ``mu_h * H + mu_s * iS``.  For a normal input the resulting
basis diagonalizes the matrix itself with probability one (in exact
arithmetic), and remains proportionally accurate under perturbation.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .eigh import eigh
from .linalg import (
    as_matrix,
    frobenius_norm,
    hermitian_split,
    matmul,
    normality_residual,
)

__all__ = ["RandDiagResult", "rand_diag", "fixed_comb_diag", "diag_of"]


@dataclass(frozen=True)
class RandDiagResult:
    """Output of one randomized-diagonalization run.

    ``u`` diagonalizes the drawn combination ``mu_h * H + mu_s * iS``; the
    coefficients are recorded exactly as drawn for reproducibility.
    """

    u: np.ndarray
    mu_h: float
    mu_s: float
    eigenvalues_of_combination: np.ndarray = field(repr=False)

    @property
    def min_eigenvalue_gap(self):
        """Smallest gap between adjacent combination eigenvalues.

        Diagnostic for near-degenerate draws; the algorithm never retries
        on small gaps.
        """
        lam = self.eigenvalues_of_combination
        if lam.shape[0] < 2:
            return float("inf")
        return float(np.min(np.diff(lam)))


def _combination_basis(a, mu_h, mu_s):
    h, s = hermitian_split(a)
    comb = mu_h * h + mu_s * (1j * s)
    decomp = eigh(comb)  # symmetrizes once internally
    return decomp


def rand_diag(a, state, check_normality=False):
    """Diagonalize a (nearly) normal matrix in a random Hermitian basis.

    Draws ``mu_h, mu_s ~ N(0,1)`` from ``state`` (in that order), forms the
    Hermitian combination of the split parts and returns its eigenbasis.
    Non-normal inputs are accepted and processed as-is; with
    ``check_normality=True`` a warning reporting ``normality_residual(a)``
    is emitted when the input is materially non-normal (costs two extra
    matrix products).
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"rand_diag requires a square matrix, got {a.shape}")
    if check_normality:
        resid = normality_residual(a)
        scale = frobenius_norm(a) ** 2
        if resid > 1e-12 * scale:
            warnings.warn(
                f"input is not numerically normal: ||AA*-A*A||_F = {resid:.3e} "
                f"(threshold {1e-12 * scale:.3e}); proceeding anyway",
                stacklevel=2,
            )
    mu_h = state.normal()
    mu_s = state.normal()
    decomp = _combination_basis(a, mu_h, mu_s)
    return RandDiagResult(
        u=decomp.vectors,
        mu_h=float(mu_h),
        mu_s=float(mu_s),
        eigenvalues_of_combination=decomp.values,
    )


def fixed_comb_diag(a, mu_h, mu_s):
    """Like :func:`rand_diag` but with caller-fixed coefficients.

    Consumes no randomness; exists to demonstrate why hard-coded
    coefficients fail on adversarial inputs.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"fixed_comb_diag requires a square matrix, got {a.shape}")
    decomp = _combination_basis(a, float(mu_h), float(mu_s))
    return RandDiagResult(
        u=decomp.vectors,
        mu_h=float(mu_h),
        mu_s=float(mu_s),
        eigenvalues_of_combination=decomp.values,
    )


def diag_of(a, u):
    """Diagonal of ``u* a u`` as a length-n complex vector."""
    a = as_matrix(a, "a")
    u = as_matrix(u, "u")
    if u.shape[0] != u.shape[1]:
        raise ValueError(f"diag_of requires square u, got {u.shape}")
    if a.shape[0] != a.shape[1] or a.shape[0] != u.shape[0]:
        raise ValueError(f"diag_of dimension mismatch: a {a.shape}, u {u.shape}")
    w = matmul(a, u)
    return np.sum(u.conj() * w, axis=0)
