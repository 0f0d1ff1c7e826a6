"""Randomized diagonalization of complex normal matrices.

A normal matrix commutes with its adjoint, so its Hermitian part H and
skew-Hermitian part S share an eigenbasis.  Diagonalizing the Hermitian
combination ``mu_h * H + mu_s * iS`` for independent standard-normal
coefficients recovers that shared basis with probability one, turning the
normal eigenproblem into a single Hermitian one.  This package implements
that algorithm from scratch (Householder + implicit QL), a complex Schur
baseline (Hessenberg + shifted QR), experiment generators, error metrics
with optimal eigenvalue matching, Matrix Market I/O and a benchmark CLI.
"""

from .backend import active_backend
from .diagonalize import RandDiagResult, diag_of, fixed_comb_diag, rand_diag
from .eigh import ConvergenceError, EigenDecomposition, eigh, tridiagonalize
from .generators import (
    ThermalModelSpec,
    counterexample_matrix,
    random_normal_matrix,
    thermal_unitary,
    unitary_exp_i,
)
from .linalg import (
    adjoint,
    frobenius_norm,
    hermitian_split,
    kron,
    matmul,
    normality_residual,
    offdiag,
    unitarity_residual,
)
from .metrics import AssignmentResult, eig_relative_error, hungarian, offdiag_error
from .mmio import (
    MatrixMarketError,
    TrialRecord,
    append_trial,
    read_matrix,
    read_trials,
    write_matrix,
)
from .rng import RngState, complex_gaussian, gue, haar_unitary, std_normal
from .schur import SchurDecomposition, hessenberg, schur

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "active_backend",
    "RandDiagResult",
    "rand_diag",
    "fixed_comb_diag",
    "diag_of",
    "EigenDecomposition",
    "ConvergenceError",
    "eigh",
    "tridiagonalize",
    "SchurDecomposition",
    "hessenberg",
    "schur",
    "AssignmentResult",
    "hungarian",
    "offdiag_error",
    "eig_relative_error",
    "RngState",
    "std_normal",
    "complex_gaussian",
    "haar_unitary",
    "gue",
    "ThermalModelSpec",
    "random_normal_matrix",
    "counterexample_matrix",
    "thermal_unitary",
    "unitary_exp_i",
    "adjoint",
    "matmul",
    "kron",
    "hermitian_split",
    "frobenius_norm",
    "offdiag",
    "normality_residual",
    "unitarity_residual",
    "MatrixMarketError",
    "TrialRecord",
    "write_matrix",
    "read_matrix",
    "read_trials",
    "append_trial",
]
