"""Deterministic seeded sampling.

The generator is xoshiro256++ (Blackman & Vigna) seeded through splitmix64,
with standard normals produced by the Marsaglia polar method.  This choice
is fixed for the life of the repo: a given seed yields the identical sample
stream on every run of the same build (and, by construction, on both kernel
backends).  Complex Gaussians use the ``E|z|^2 = 1`` convention: real and
imaginary parts are independent N(0, 1/2).

Not cryptographic; streams from distinct seeds are independent only in the
statistical sense.
"""

import math

import numpy as np

from . import backend

__all__ = [
    "RngState",
    "std_normal",
    "complex_gaussian",
    "haar_unitary",
    "gue",
]

_SQRT_HALF = math.sqrt(0.5)


class RngState:
    """Seeded random stream.  Not thread-safe: one state per thread."""

    def __init__(self, seed):
        self.seed = int(seed)
        self._s = backend.kernels.seed_state(self.seed)
        self._has_spare = False
        self._spare = 0.0

    def __repr__(self):
        return f"RngState(seed={self.seed})"

    def normal(self):
        """One N(0,1) draw."""
        return self.normals(1)[0]

    def normals(self, count):
        """Array of ``count`` N(0,1) draws."""
        out = np.empty(int(count))
        self._has_spare, self._spare = backend.kernels.fill_normals(
            self._s, out, self._has_spare, self._spare
        )
        return out

    def uniform(self):
        """One double in [0, 1)."""
        out = np.empty(1)
        backend.kernels.fill_uniforms(self._s, out)
        return float(out[0])

    def complex_normal(self):
        """One standard complex Gaussian draw (E|z|^2 = 1)."""
        buf = self.normals(2)
        return complex(buf[0] * _SQRT_HALF, buf[1] * _SQRT_HALF)

    def complex_normals(self, count):
        """Array of ``count`` standard complex Gaussian draws."""
        buf = self.normals(2 * int(count)).reshape(int(count), 2)
        return (buf[:, 0] + 1j * buf[:, 1]) * _SQRT_HALF

    def permutation(self, k):
        """Fisher-Yates shuffle of ``range(k)`` driven by this stream."""
        perm = np.arange(int(k), dtype=np.int64)
        for i in range(int(k) - 1, 0, -1):
            j = int(self.uniform() * (i + 1))
            if j > i:
                j = i
            perm[i], perm[j] = perm[j], perm[i]
        return perm


def std_normal(state):
    """One N(0,1) draw, advancing ``state``."""
    return state.normal()


def complex_gaussian(state):
    """One standard complex Gaussian draw (E|z|^2 = 1), advancing ``state``."""
    return state.complex_normal()


def haar_unitary(n, state):
    """Haar-distributed n x n unitary matrix.

    QR factorization of a complex Gaussian matrix with the phase fix:
    column k of Q is multiplied by ``conj(R_kk / |R_kk|)``, which makes the
    output distribution exactly Haar (plain QR alone is not).
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"haar_unitary requires n >= 1, got {n}")
    g = state.complex_normals(n * n).reshape(n, n)
    q, rdiag = backend.kernels.qr_decompose(np.ascontiguousarray(g))
    mags = np.abs(rdiag)
    safe = np.where(mags > 0.0, mags, 1.0)
    phases = np.where(mags > 0.0, rdiag / safe, 1.0 + 0.0j)
    return np.ascontiguousarray(q * phases.conj()[None, :])


def gue(n, trace_sq_target, state):
    """Hermitian matrix from the Gaussian unitary ensemble.

    Entry variances are uniform (E|M_ij|^2 = sigma^2 for every entry:
    diagonal real N(0, sigma^2), off-diagonal complex with re/im
    N(0, sigma^2/2)), so E[trace(M^2)] = n^2 sigma^2.  ``sigma`` is chosen
    as ``sqrt(trace_sq_target)/n`` to hit the requested target.  The result
    is exactly Hermitian by construction.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"gue requires n >= 1, got {n}")
    if not trace_sq_target > 0.0:
        raise ValueError(
            f"gue requires trace_sq_target > 0, got {trace_sq_target}"
        )
    sigma = math.sqrt(float(trace_sq_target)) / n
    m = np.zeros((n, n), dtype=np.complex128)
    diag = state.normals(n)
    for i in range(n):
        m[i, i] = sigma * diag[i]
    if n > 1:
        off = state.complex_normals(n * (n - 1) // 2)
        idx = 0
        for i in range(n):
            for j in range(i + 1, n):
                z = sigma * off[idx]
                idx += 1
                m[i, j] = z
                m[j, i] = z.conjugate()
    return m
