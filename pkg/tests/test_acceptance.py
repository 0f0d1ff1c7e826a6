"""Acceptance suite: one test per release criterion.

Each test prints a single ``ACCEPTANCE <nn> <name>: PASS|FAIL`` line (run
with ``pytest -s`` to see them live) and then asserts.  Criteria 01 and 06
encode tolerance targets that are provably out of reach for any
backward-stable double-precision eigensolver; substituting LAPACK's zheevd
reproduces the same failures, so they are expected to stay red.  They are
kept faithful to their stated thresholds rather than loosened.
"""

import math
import statistics
import time

import numpy as np
import pytest

from randdiag import (
    RngState,
    ThermalModelSpec,
    adjoint,
    counterexample_matrix,
    diag_of,
    eig_relative_error,
    eigh,
    fixed_comb_diag,
    frobenius_norm,
    haar_unitary,
    hermitian_split,
    hungarian,
    kron,
    matmul,
    normality_residual,
    offdiag,
    offdiag_error,
    rand_diag,
    random_normal_matrix,
    schur,
    thermal_unitary,
    unitarity_residual,
)
from oracles import (
    brute_force_assignment,
    hermitian_eigenvalues_2x2,
    hermitian_eigenvalues_3x3,
    kron_entry,
    naive_matmul,
)


def report(num, name, ok, detail=""):
    line = f"ACCEPTANCE {num:02d} {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    assert ok, line


def rotation():
    c = math.sqrt(0.5)
    return np.array([[c, -c], [c, c]], dtype=complex)


@pytest.fixture(scope="module")
def unitary_500_runs():
    """Shared n=500 Haar-unitary runs feeding criteria 02 and 07."""
    t0 = time.perf_counter()
    state = RngState(202)
    runs = []
    for _ in range(20):
        a = haar_unitary(500, state)
        res = rand_diag(a, state)
        m = matmul(adjoint(res.u), matmul(a, res.u))
        err = frobenius_norm(offdiag(m))
        dec = schur(a)
        schur_off = frobenius_norm(offdiag(dec.t))
        b = a - matmul(res.u, matmul(offdiag(m), adjoint(res.u)))
        ratio = normality_residual(b) / frobenius_norm(b) ** 2
        runs.append(
            {"randdiag_err": err, "schur_off": schur_off, "normality_ratio": ratio}
        )
    return {"runs": runs, "elapsed": time.perf_counter() - t0}


def test_criterion_01_exact_recovery():
    # 1e-12 * ||A||_F is below the reachable floor in binary64: the
    # eigensolver's backward error (~n*u) gets amplified by near-parallel
    # combination eigenvalues, and LAPACK shows the identical tail.
    t0 = time.perf_counter()
    state = RngState(101)
    worst = 0.0
    for _ in range(100):
        a, _ = random_normal_matrix(64, state)
        res = rand_diag(a, state)
        worst = max(worst, offdiag_error(a, res.u) / frobenius_norm(a))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 30.0
    report(
        1,
        "exact-recovery-n64",
        ok,
        f"worst offdiag/||A||_F {worst:.3e} vs 1e-12, {elapsed:.1f}s",
    )


def test_criterion_02_unitary_500_errors(unitary_500_runs):
    runs = unitary_500_runs["runs"]
    elapsed = unitary_500_runs["elapsed"]
    errs = [r["randdiag_err"] for r in runs]
    schur_offs = [r["schur_off"] for r in runs]
    mean_err = statistics.fmean(errs)
    ok = (
        mean_err <= 1e-8
        and max(errs) <= 1e-6
        and max(schur_offs) <= 1e-11
        and elapsed < 300.0
    )
    report(
        2,
        "unitary-n500-offdiag",
        ok,
        f"randdiag mean {mean_err:.3e} max {max(errs):.3e}, "
        f"schur max {max(schur_offs):.3e}, {elapsed:.0f}s",
    )


def test_criterion_03_eigenvalue_relative_error():
    t0 = time.perf_counter()
    state = RngState(303)
    rels = []
    for _ in range(20):
        a, spectrum = random_normal_matrix(500, state)
        res = rand_diag(a, state)
        rels.append(eig_relative_error(spectrum, diag_of(a, res.u)))
    elapsed = time.perf_counter() - t0
    mean_rel = statistics.fmean(rels)
    ok = mean_rel <= 1e-13 and elapsed < 300.0
    report(
        3,
        "normal-n500-eig-rel-error",
        ok,
        f"mean {mean_rel:.3e} vs 1e-13, {elapsed:.0f}s",
    )


def test_criterion_04_error_growth_slope():
    state = RngState(404)
    sizes = [8, 16, 32, 64, 128, 256, 512]
    means = []
    for n in sizes:
        errs = []
        for _ in range(10):
            a = haar_unitary(n, state)
            res = rand_diag(a, state)
            errs.append(offdiag_error(a, res.u))
        means.append(statistics.fmean(errs))
    slope = float(np.polyfit(np.log(sizes), np.log(means), 1)[0])
    ok = 1.0 <= slope <= 3.0
    report(4, "error-growth-slope", ok, f"slope {slope:.2f} in [1.0, 3.0]")


def test_criterion_05_counterexample():
    alpha = beta = 1.0
    a = counterexample_matrix(alpha, beta, rotation())
    scale = frobenius_norm(a)
    h, s = hermitian_split(a)
    comb_norm = frobenius_norm(alpha * h + beta * (1j * s))
    fixed = fixed_comb_diag(a, alpha, beta)
    fixed_err = offdiag_error(a, fixed.u)
    state = RngState(505)
    rand_worst = 0.0
    for _ in range(100):
        res = rand_diag(a, state)
        rand_worst = max(rand_worst, offdiag_error(a, res.u))
    ok = (
        comb_norm <= 1e-14 * scale
        and fixed_err >= 0.1 * scale
        and rand_worst <= 1e-13 * scale
    )
    report(
        5,
        "fixed-coefficient-counterexample",
        ok,
        f"||comb|| {comb_norm:.2e}, fixed err {fixed_err:.2e}, "
        f"randomized worst {rand_worst:.2e}",
    )


def test_criterion_06_perturbation_robustness():
    # median ~30 and p95 ~240 are intrinsic to this matrix/perturbation
    # family at n=64 (solver-independent; LAPACK matches to 4 digits), so
    # the 10/100 budgets cannot be met in double precision.
    state = RngState(606)
    n = 64
    ratios = []
    for _ in range(100):
        a, _ = random_normal_matrix(n, state)
        e = state.complex_normals(n * n).reshape(n, n)
        e *= 1e-6 * frobenius_norm(a) / frobenius_norm(e)
        perturbed = a + e
        res = rand_diag(perturbed, state)
        ratios.append(offdiag_error(perturbed, res.u) / frobenius_norm(e))
    ratios.sort()
    med = statistics.median(ratios)
    p95 = ratios[94]
    ok = med <= 10.0 and p95 <= 100.0
    report(
        6,
        "perturbation-robustness",
        ok,
        f"median {med:.1f} vs 10, p95 {p95:.1f} vs 100",
    )


def test_criterion_07_backward_error_normality(unitary_500_runs):
    ratios = [r["normality_ratio"] for r in unitary_500_runs["runs"]]
    ok = max(ratios) <= 1e-11
    report(
        7,
        "backward-error-normality",
        ok,
        f"worst residual/||B||_F^2 {max(ratios):.3e} vs 1e-11",
    )


def test_criterion_08_cross_solver_agreement():
    state = RngState(808)
    worst = 0.0
    for _ in range(20):
        a, _ = random_normal_matrix(128, state)
        res = rand_diag(a, state)
        d1 = np.diagonal(schur(a).t)
        d2 = diag_of(a, res.u)
        worst = max(worst, eig_relative_error(d1, d2))
    ok = worst <= 1e-10
    report(8, "cross-solver-eigenvalues", ok, f"worst rel err {worst:.3e} vs 1e-10")


def test_criterion_09_thermal_model():
    state = RngState(909)
    n = 256
    worst_err = 0.0
    worst_unit = 0.0
    for _ in range(5):
        uf = thermal_unitary(ThermalModelSpec(num_states=8), state)
        worst_unit = max(worst_unit, unitarity_residual(uf))
        res = rand_diag(uf, state)
        worst_err = max(
            worst_err, offdiag_error(uf, res.u) / frobenius_norm(uf)
        )
    ok = worst_err <= 1e-8 and worst_unit <= 1e-12 * n
    report(
        9,
        "thermal-model-L8",
        ok,
        f"worst offdiag/||A||_F {worst_err:.3e} vs 1e-8, "
        f"worst unitarity {worst_unit:.3e} vs {1e-12 * n:.2e}",
    )


def test_criterion_10_speed_ratio():
    t0 = time.perf_counter()
    gen_state = RngState(1010)
    rand_times = []
    schur_times = []
    for _ in range(7):
        a = haar_unitary(512, gen_state)
        t1 = time.perf_counter()
        rand_diag(a, gen_state)
        rand_times.append(time.perf_counter() - t1)
        t1 = time.perf_counter()
        schur(a)
        schur_times.append(time.perf_counter() - t1)
    elapsed = time.perf_counter() - t0
    med_rand = statistics.median(rand_times)
    med_schur = statistics.median(schur_times)
    ok = med_rand <= med_schur / 1.5 and elapsed < 600.0
    report(
        10,
        "speed-ratio-n512",
        ok,
        f"median randdiag {med_rand:.2f}s vs schur {med_schur:.2f}s "
        f"(ratio {med_schur / med_rand:.2f}, need >= 1.5), {elapsed:.0f}s",
    )


def test_criterion_11_oracle_suites():
    # assignment vs factorial brute force, n <= 7
    state = RngState(1111)
    assignment_ok = True
    for _ in range(1000):
        n = 2 + int(state.uniform() * 6)
        cost = state.normals(n * n).reshape(n, n)
        got = hungarian(cost)
        _, want = brute_force_assignment(cost)
        if not math.isclose(got.total_cost, want, rel_tol=1e-12, abs_tol=1e-12):
            assignment_ok = False
            break

    # eigenvalues vs characteristic-polynomial roots
    eig_ok = True
    for n, oracle in ((2, hermitian_eigenvalues_2x2), (3, hermitian_eigenvalues_3x3)):
        for _ in range(200):
            g = state.complex_normals(n * n).reshape(n, n)
            m = (g + g.conj().T) / 2
            got = eigh(m).values
            if np.max(np.abs(got - oracle(m))) > 1e-10 * frobenius_norm(m):
                eig_ok = False
                break

    # matmul and kron vs naive index oracles
    a = state.complex_normals(25).reshape(5, 5)
    b = state.complex_normals(25).reshape(5, 5)
    mm_err = np.max(np.abs(matmul(a, b) - naive_matmul(a, b)))
    mm_ok = mm_err <= 1e-13 * frobenius_norm(a) * frobenius_norm(b)
    ka = state.complex_normals(4).reshape(2, 2)
    kb = state.complex_normals(9).reshape(3, 3)
    kr = kron(ka, kb)
    kron_ok = all(
        abs(kr[row, col] - kron_entry(ka, kb, row, col))
        <= 1e-13 * abs(ka[row // 3, col // 3]) * abs(kb[row % 3, col % 3])
        for row in range(6)
        for col in range(6)
    )

    ok = assignment_ok and eig_ok and mm_ok and kron_ok
    report(
        11,
        "oracle-suites",
        ok,
        f"assignment {assignment_ok}, eig-roots {eig_ok}, "
        f"matmul {mm_ok}, kron {kron_ok}",
    )
