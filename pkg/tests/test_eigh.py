"""Tests for the Hermitian eigensolver."""

import numpy as np
import pytest

from randdiag import (
    RngState,
    adjoint,
    eigh,
    frobenius_norm,
    matmul,
    tridiagonalize,
    unitarity_residual,
)
from oracles import hermitian_eigenvalues_2x2, hermitian_eigenvalues_3x3


def random_hermitian(state, n):
    g = state.complex_normals(n * n).reshape(n, n)
    return (g + g.conj().T) / 2


def residual(m, dec):
    return frobenius_norm(matmul(m, dec.vectors) - dec.vectors * dec.values[None, :])


class TestEighSmall:
    def test_already_diagonal(self):
        dec = eigh(np.diag([3.0, 1.0, 2.0]).astype(complex))
        assert np.allclose(dec.values, [1.0, 2.0, 3.0], atol=1e-15)
        # eigenvectors form a permutation matrix (phases fixed real positive)
        perm = np.abs(dec.vectors)
        assert np.allclose(perm @ perm.T, np.eye(3), atol=1e-14)
        assert np.allclose(np.sort(perm, axis=0)[-1], 1.0, atol=1e-14)

    def test_pauli_y_like(self):
        m = np.array([[0.0, 1j], [-1j, 0.0]])
        dec = eigh(m)
        assert np.allclose(dec.values, [-1.0, 1.0], atol=1e-14)

    def test_symmetric_2x2(self):
        dec = eigh(np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex))
        assert np.allclose(dec.values, [1.0, 3.0], atol=1e-14)
        c = np.sqrt(0.5)
        assert np.allclose(dec.vectors, np.array([[c, c], [-c, c]]), atol=1e-14)

    def test_one_by_one(self):
        dec = eigh(np.array([[2.5 + 0j]]))
        assert dec.values[0] == 2.5
        assert dec.vectors[0, 0] == 1.0

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            eigh(np.ones((2, 3)))


class TestEighInvariants:
    @pytest.mark.parametrize("n", [2, 3, 5, 8, 32, 128, 512])
    def test_residual_and_unitarity(self, n):
        m = random_hermitian(RngState(3000 + n), n)
        dec = eigh(m)
        scale = frobenius_norm(m)
        assert residual(m, dec) <= 1e-13 * n * scale
        assert unitarity_residual(dec.vectors) <= 1e-13 * n
        assert np.all(np.diff(dec.values) >= 0)

    @pytest.mark.parametrize("n", [2, 3])
    def test_matches_characteristic_polynomial_roots(self, n):
        state = RngState(3100 + n)
        oracle = hermitian_eigenvalues_2x2 if n == 2 else hermitian_eigenvalues_3x3
        for _ in range(200):
            m = random_hermitian(state, n)
            dec = eigh(m)
            want = oracle(m)
            assert np.max(np.abs(dec.values - want)) <= 1e-10 * frobenius_norm(m)

    def test_trace_and_frobenius_identities(self):
        m = random_hermitian(RngState(3200), 24)
        dec = eigh(m)
        tr = np.trace(m).real
        assert abs(tr - dec.values.sum()) <= 1e-12 * max(abs(tr), 1.0)
        fsq = frobenius_norm(m) ** 2
        assert abs(fsq - np.sum(dec.values**2)) <= 1e-12 * fsq

    def test_positive_scaling_invariance(self):
        m = random_hermitian(RngState(3300), 12)
        c = 3.75
        base = eigh(m).values
        scaled = eigh(c * m).values
        assert np.max(np.abs(scaled - c * base)) <= 1e-13 * c * np.max(
            np.abs(base)
        )

    def test_symmetrizes_input(self):
        # eigenvalues come from (M + M*)/2 when the input is slightly skewed
        m = random_hermitian(RngState(3400), 6)
        noisy = m + 1e-14 * np.ones((6, 6))
        sym = (noisy + noisy.conj().T) / 2
        assert np.allclose(eigh(noisy).values, eigh(sym).values, atol=1e-13)


class TestTridiagonalize:
    def test_2x2_direct(self):
        m = np.array([[2.0, 1 - 1j], [1 + 1j, 3.0]])
        q, d, e = tridiagonalize(m)
        assert np.allclose(d, [2.0, 3.0], atol=1e-15)
        assert e.shape == (1,)
        assert e[0] == pytest.approx(abs(m[1, 0]), rel=1e-15)
        # q is a diagonal phase matrix here
        assert abs(abs(q[0, 0]) - 1.0) <= 1e-15
        assert abs(abs(q[1, 1]) - 1.0) <= 1e-15
        assert q[0, 1] == 0 and q[1, 0] == 0

    def test_reconstruction_6x6(self):
        n = 6
        m = random_hermitian(RngState(3500), n)
        q, d, e = tridiagonalize(m)
        t = np.diag(d).astype(complex) + np.diag(e, 1) + np.diag(e, -1)
        recon = matmul(matmul(q, t), adjoint(q))
        assert frobenius_norm(m - recon) <= 1e-13 * n * frobenius_norm(m)
        assert np.all(e >= 0)
        assert unitarity_residual(q) <= 1e-13 * n

    def test_trace_preserved(self):
        m = random_hermitian(RngState(3600), 9)
        _, d, _ = tridiagonalize(m)
        assert abs(d.sum() - np.trace(m).real) <= 1e-13 * frobenius_norm(m)

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            tridiagonalize(np.ones((3, 4)))

    def test_one_by_one(self):
        q, d, e = tridiagonalize(np.array([[4.0 + 0j]]))
        assert d[0] == 4.0 and e.shape == (0,) and q[0, 0] == 1.0


class TestConvergenceFailure:
    def test_error_carries_stuck_index(self, monkeypatch):
        from randdiag import ConvergenceError, backend

        real_kernels = backend.kernels

        class StuckKernels:
            def __getattr__(self, name):
                return getattr(real_kernels, name)

            @staticmethod
            def tql2(d, e, vt):
                real_kernels.tql2(d, e, vt)
                return 5

        monkeypatch.setattr(backend, "kernels", StuckKernels())
        m = random_hermitian(RngState(3700), 8)
        with pytest.raises(ConvergenceError) as err:
            eigh(m)
        assert err.value.index == 5
        assert "5" in str(err.value)
