"""Tests for the experiment matrix generators."""

import math

import numpy as np
import pytest

from randdiag import (
    RngState,
    ThermalModelSpec,
    counterexample_matrix,
    diag_of,
    eig_relative_error,
    frobenius_norm,
    gue,
    haar_unitary,
    hermitian_split,
    kron,
    matmul,
    normality_residual,
    rand_diag,
    random_normal_matrix,
    schur,
    thermal_unitary,
    unitarity_residual,
    unitary_exp_i,
)


def rotation():
    c = math.sqrt(0.5)
    return np.array([[c, -c], [c, c]], dtype=complex)


class TestRandomNormalMatrix:
    def test_one_by_one_is_the_drawn_scalar(self):
        a, spectrum = random_normal_matrix(1, RngState(80))
        assert abs(a[0, 0] - spectrum[0]) <= 1e-14 * abs(spectrum[0])

    def test_normality_residual(self):
        a, _ = random_normal_matrix(64, RngState(81))
        assert normality_residual(a) <= 1e-12 * frobenius_norm(a) ** 2

    def test_schur_recovers_spectrum(self):
        a, spectrum = random_normal_matrix(16, RngState(82))
        d2 = np.diagonal(schur(a).t)
        assert eig_relative_error(spectrum, d2) <= 1e-12

    def test_zero_dimension_rejected(self):
        with pytest.raises(ValueError):
            random_normal_matrix(0, RngState(1))


class TestCounterexampleMatrix:
    def test_pure_skew_case(self):
        a = counterexample_matrix(1.0, 0.0, rotation())
        h, _ = hermitian_split(a)
        assert frobenius_norm(h) <= 1e-15 * frobenius_norm(a)

    def test_spectrum_by_construction(self):
        alpha, beta = 1.0, 1.0
        a = counterexample_matrix(alpha, beta, rotation())
        lam = complex(beta, alpha)
        assert complex(np.trace(a)) == pytest.approx(lam, rel=1e-14)
        det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
        assert abs(det) <= 1e-14 * abs(lam) ** 2

    def test_fixed_combination_vanishes(self):
        a = counterexample_matrix(1.0, 1.0, rotation())
        h, s = hermitian_split(a)
        comb = 1.0 * h + 1.0 * (1j * s)
        assert frobenius_norm(comb) <= 1e-14 * frobenius_norm(a)

    def test_randomized_coefficients_still_succeed(self):
        a = counterexample_matrix(1.0, 1.0, rotation())
        state = RngState(83)
        scale = frobenius_norm(a)
        for _ in range(10):
            res = rand_diag(a, state)
            m = matmul(res.u.conj().T, matmul(a, res.u))
            off = math.sqrt(abs(m[0, 1]) ** 2 + abs(m[1, 0]) ** 2)
            assert off <= 1e-13 * scale

    def test_non_unitary_u0_rejected(self):
        with pytest.raises(ValueError):
            counterexample_matrix(1.0, 1.0, 2.0 * rotation())

    def test_near_identity_u0_rejected(self):
        with pytest.raises(ValueError):
            counterexample_matrix(1.0, 1.0, np.eye(2))


class TestUnitaryExpI:
    def test_zero_gives_identity(self):
        got = unitary_exp_i(np.zeros((3, 3)))
        assert np.allclose(got, np.eye(3), atol=1e-15)

    def test_euler_identity(self):
        got = unitary_exp_i(np.array([[math.pi]]))
        assert abs(got[0, 0] - (-1.0)) <= 1e-15

    def test_closed_form_2x2(self):
        theta = math.pi / 4
        m = np.array([[0.0, theta], [theta, 0.0]])
        want = np.array(
            [
                [math.cos(theta), 1j * math.sin(theta)],
                [1j * math.sin(theta), math.cos(theta)],
            ]
        )
        assert np.allclose(unitary_exp_i(m), want, atol=1e-14)

    def test_inverse_pairing(self):
        state = RngState(84)
        m = gue(4, 2.0, state)
        u_fwd = unitary_exp_i(m)
        u_bwd = unitary_exp_i(-m)
        assert frobenius_norm(matmul(u_fwd, u_bwd) - np.eye(4)) <= 1e-13 * 4


class TestThermalUnitary:
    def test_l2_matches_manual_composition(self):
        spec = ThermalModelSpec(num_states=2, site_order=[1])
        got = thermal_unitary(spec, RngState(85))
        state = RngState(85)
        d1 = haar_unitary(2, state)
        d2 = haar_unitary(2, state)
        bond = unitary_exp_i(gue(4, 2.0, state))
        want = matmul(bond, kron(d1, d2))
        assert np.array_equal(got, want)

    def test_l2_unitarity(self):
        got = thermal_unitary(ThermalModelSpec(num_states=2), RngState(86))
        assert got.shape == (4, 4)
        assert unitarity_residual(got) <= 1e-13 * 4

    def test_l3_dimension_and_unitarity(self):
        got = thermal_unitary(ThermalModelSpec(num_states=3), RngState(87))
        assert got.shape == (8, 8)
        assert unitarity_residual(got) <= 1e-12 * 8

    def test_reproducible_with_fixed_seed(self):
        spec = ThermalModelSpec(num_states=3)
        a = thermal_unitary(spec, RngState(88))
        b = thermal_unitary(spec, RngState(88))
        assert np.array_equal(a, b)

    def test_identity_order_differs_from_reversed(self):
        fwd = thermal_unitary(
            ThermalModelSpec(num_states=3, site_order=[1, 2]), RngState(89)
        )
        rev = thermal_unitary(
            ThermalModelSpec(num_states=3, site_order=[2, 1]), RngState(89)
        )
        # adjacent bond factors do not commute, so order matters
        assert frobenius_norm(fwd - rev) > 1e-8

    def test_bad_site_order_rejected(self):
        with pytest.raises(ValueError):
            thermal_unitary(
                ThermalModelSpec(num_states=3, site_order=[1, 1]), RngState(1)
            )

    def test_too_few_states_rejected(self):
        with pytest.raises(ValueError):
            thermal_unitary(ThermalModelSpec(num_states=1), RngState(1))

    def test_randomized_basis_diagonalizes(self):
        uf = thermal_unitary(ThermalModelSpec(num_states=4), RngState(90))
        res = rand_diag(uf, RngState(91))
        d = diag_of(uf, res.u)
        # eigenvalues of a unitary lie on the unit circle
        assert np.max(np.abs(np.abs(d) - 1.0)) <= 1e-10


class TestResidualSweep:
    def test_twenty_seeds_per_generator(self):
        for seed in range(20):
            state = RngState(9000 + seed)
            a, _ = random_normal_matrix(12, state)
            assert normality_residual(a) <= 1e-12 * frobenius_norm(a) ** 2
            u = haar_unitary(8, state)
            assert unitarity_residual(u) <= 1e-13 * 8
            uf = thermal_unitary(ThermalModelSpec(num_states=2), state)
            assert unitarity_residual(uf) <= 1e-12 * 4
            m = gue(4, 2.0, state)
            assert np.array_equal(m, m.conj().T)
