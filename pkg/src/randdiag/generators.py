"""Experiment matrix families.

Every generator takes an explicit :class:`~randdiag.rng.RngState` so runs
are reproducible from a seed alone.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .eigh import eigh
from .linalg import (
    adjoint,
    as_matrix,
    frobenius_norm,
    kron,
    matmul,
    offdiag,
    unitarity_residual,
)
from .rng import gue, haar_unitary

__all__ = [
    "ThermalModelSpec",
    "random_normal_matrix",
    "counterexample_matrix",
    "thermal_unitary",
    "unitary_exp_i",
]


@dataclass(frozen=True)
class ThermalModelSpec:
    """Parameters of the nearest-neighbor Floquet-style unitary model.

    ``num_states`` (L) gives a matrix of dimension ``2**L``.  ``site_order``
    is the order in which the L-1 bond factors are multiplied, as a
    permutation of ``{1, ..., L-1}``; ``None`` means draw a uniformly random
    order from the stream at build time.  ``seed`` records the stream seed
    used, for bookkeeping only.
    """

    num_states: int
    site_order: Optional[Sequence[int]] = None
    seed: Optional[int] = None


def random_normal_matrix(n, state):
    """Random normal matrix ``U D U*`` with its exact spectrum.

    ``U`` is Haar unitary and ``D`` diagonal with standard complex Gaussian
    entries.  Returns ``(a, spectrum)``; the spectrum is the ground truth
    for eigenvalue-accuracy experiments.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"random_normal_matrix requires n >= 1, got {n}")
    u = haar_unitary(n, state)
    spectrum = state.complex_normals(n)
    a = matmul(np.ascontiguousarray(u * spectrum[None, :]), adjoint(u))
    return a, spectrum


def counterexample_matrix(alpha, beta, u0):
    """Rank-one normal matrix on which fixed coefficients (alpha, beta) fail.

    ``A = u0 @ diag(beta + i*alpha, 0) @ u0*`` has the property that the
    fixed combination ``alpha * H + beta * iS`` vanishes identically, so a
    diagonalizer using those hard-coded coefficients learns nothing about
    the eigenbasis.  ``u0`` must be unitary and visibly different from the
    identity (``||offdiag(u0)||_F > 0.1``).
    """
    u0 = as_matrix(u0, "u0")
    if u0.shape != (2, 2):
        raise ValueError(f"u0 must be 2x2, got {u0.shape}")
    if unitarity_residual(u0) > 1e-12:
        raise ValueError("u0 is not unitary to 1e-12")
    if frobenius_norm(offdiag(u0)) <= 0.1:
        raise ValueError("u0 is too close to diagonal: need ||offdiag(u0)||_F > 0.1")
    lam = complex(beta, alpha)
    d = np.array([[lam, 0.0], [0.0, 0.0]], dtype=np.complex128)
    return matmul(matmul(u0, d), adjoint(u0))


def unitary_exp_i(m):
    """``exp(i m)`` for Hermitian ``m``, via the spectral decomposition."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"unitary_exp_i requires a square matrix, got {m.shape}")
    decomp = eigh(m)
    phases = np.exp(1j * decomp.values)
    return matmul(
        np.ascontiguousarray(decomp.vectors * phases[None, :]),
        adjoint(decomp.vectors),
    )


def thermal_unitary(spec, state):
    """Unitary of the thermal-conductivity model: ``U_F = U_int @ U_0``.

    ``U_0`` is the Kronecker product of L Haar-random 2x2 unitaries.
    ``U_int`` multiplies, over bonds ``k = site_order[j]`` in order, the
    factors ``I_{2^(k-1)} (x) u_k (x) I_{2^(L-k-1)}`` where each ``u_k`` is
    ``exp(i M)`` for a 4x4 GUE matrix normalized to E[trace(M^2)] = 2.
    Dimension is ``2**L``; the site order is drawn from ``state`` when the
    spec leaves it unset.
    """
    if not isinstance(spec, ThermalModelSpec):
        spec = ThermalModelSpec(num_states=int(spec))
    big_l = int(spec.num_states)
    if big_l < 2:
        raise ValueError(f"thermal model requires num_states >= 2, got {big_l}")
    if spec.site_order is None:
        order = [int(v) + 1 for v in state.permutation(big_l - 1)]
    else:
        order = [int(v) for v in spec.site_order]
        if sorted(order) != list(range(1, big_l)):
            raise ValueError(
                f"site_order must be a permutation of 1..{big_l - 1}, got {order}"
            )
    factors = [haar_unitary(2, state) for _ in range(big_l)]
    u0 = factors[0]
    for d in factors[1:]:
        u0 = kron(u0, d)
    u_int = None
    for k in order:
        bond = unitary_exp_i(gue(4, 2.0, state))
        left = np.eye(2 ** (k - 1), dtype=np.complex128)
        right = np.eye(2 ** (big_l - k - 1), dtype=np.complex128)
        sandwich = kron(kron(left, bond), right)
        u_int = sandwich if u_int is None else matmul(u_int, sandwich)
    return matmul(u_int, u0)
