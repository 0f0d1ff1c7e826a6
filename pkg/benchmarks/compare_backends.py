#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the hot kernels on identical inputs through both backend modules and
prints per-kernel timings plus the speedup.  Invoke from the repo root:

    python3 benchmarks/compare_backends.py [--sizes 128,256,512] [--repeats 3]
"""

import argparse
import time

import numpy as np

from randdiag import _kernels_numpy as knp

try:
    from randdiag import _kernels_numba as knb
except ImportError:
    knb = None


def hermitian(g):
    return np.ascontiguousarray((g + g.conj().T) / 2)


def ginibre(seed, n):
    s = knp.seed_state(seed)
    buf = np.empty(2 * n * n)
    knp.fill_normals(s, buf, False, 0.0)
    buf = buf.reshape(n * n, 2)
    return np.ascontiguousarray(
        ((buf[:, 0] + 1j * buf[:, 1]) / np.sqrt(2)).reshape(n, n)
    )


def bench_matmul(kern, n):
    a = ginibre(1, n)
    b = ginibre(2, n)
    return lambda: kern.matmul(a, b)


def bench_eigh_path(kern, n):
    m = hermitian(ginibre(3, n))

    def run():
        q, d, e = kern.tridiagonalize(m)
        epad = np.zeros(n)
        epad[: n - 1] = e
        vt = np.ascontiguousarray(q.T)
        kern.tql2(d, epad, vt)

    return run


def bench_schur_path(kern, n):
    a = ginibre(4, n)

    def run():
        q, h = kern.hessenberg(a)
        ut = np.ascontiguousarray(q.T)
        kern.schur_qr(h, ut, 30 * n)

    return run


def bench_qr(kern, n):
    g = ginibre(5, n)
    return lambda: kern.qr_decompose(g)


def bench_normals(kern, n):
    count = n * n

    def run():
        s = kern.seed_state(6)
        out = np.empty(count)
        kern.fill_normals(s, out, False, 0.0)

    return run


def bench_lsap(kern, n):
    s = knp.seed_state(7)
    buf = np.empty(n * n)
    knp.fill_uniforms(s, buf)
    cost = np.ascontiguousarray(buf.reshape(n, n))
    return lambda: kern.lsap(cost)


KERNEL_BENCHES = [
    ("matmul", bench_matmul),
    ("eigh path (tridiag+QL)", bench_eigh_path),
    ("schur path (hess+QR)", bench_schur_path),
    ("householder QR", bench_qr),
    ("normal draws (n^2)", bench_normals),
    ("assignment (lsap)", bench_lsap),
]


def best_time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="128,256,512")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(v) for v in args.sizes.split(",")]

    if knb is None:
        print("numba backend unavailable; nothing to compare")
        return

    print(f"{'kernel':<24} {'n':>5} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for name, make in KERNEL_BENCHES:
        for n in sizes:
            fn_nb = make(knb, n)
            fn_nb()  # JIT warmup outside the timed region
            t_nb = best_time(fn_nb, args.repeats)
            t_np = best_time(make(knp, n), args.repeats)
            print(
                f"{name:<24} {n:>5} {t_np:>9.4f}s {t_nb:>9.4f}s "
                f"{t_np / t_nb:>7.1f}x"
            )


if __name__ == "__main__":
    main()
