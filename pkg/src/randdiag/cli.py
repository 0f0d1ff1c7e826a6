"""Command-line interface.

Subcommands::

    gen    generate an experiment matrix and write it to a file
    diag   randomized diagonalization of a matrix file
    schur  Schur decomposition of a matrix file
    bench  seeded benchmark grid, appending per-trial rows to a CSV
    check  recompute error metrics for a matrix/basis pair

Exit codes: 0 success, 2 usage or parse error, 3 numerical failure.
"""

import argparse
import hashlib
import math
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .diagonalize import diag_of, rand_diag
from .eigh import ConvergenceError
from .generators import (
    ThermalModelSpec,
    counterexample_matrix,
    random_normal_matrix,
    thermal_unitary,
)
from .linalg import frobenius_norm, matmul, normality_residual, offdiag
from .metrics import eig_relative_error, offdiag_error
from .mmio import (
    ALGORITHMS,
    MatrixMarketError,
    TrialRecord,
    append_trial,
    read_matrix,
    write_matrix,
)
from .rng import RngState, haar_unitary
from .schur import schur

USAGE_ERROR = 2
NUMERICAL_ERROR = 3

_GEN_KINDS = ("unitary", "normal", "thermal", "counterexample")


def _default_rotation():
    c = math.sqrt(0.5)
    return np.array([[c, -c], [c, c]], dtype=np.complex128)


def _trial_seed(master_seed, kind, n, run):
    """Deterministic per-trial seed: master XOR a stable content hash."""
    digest = hashlib.blake2b(
        f"{kind}:{n}:{run}".encode("ascii"), digest_size=8
    ).digest()
    return (int(master_seed) ^ int.from_bytes(digest, "little")) & ((1 << 64) - 1)


def _generate(kind, n, seed, identity_order=False, alpha=1.0, beta=1.0):
    """Build one experiment matrix; returns (matrix, spectrum-or-None)."""
    state = RngState(seed)
    if kind == "unitary":
        return haar_unitary(n, state), None
    if kind == "normal":
        return random_normal_matrix(n, state)
    if kind == "thermal":
        big_l = n.bit_length() - 1
        if 2**big_l != n or big_l < 2:
            raise ValueError(
                f"thermal matrices need n = 2**L with L >= 2, got n={n}"
            )
        order = list(range(1, big_l)) if identity_order else None
        spec = ThermalModelSpec(num_states=big_l, site_order=order, seed=seed)
        return thermal_unitary(spec, state), None
    if kind == "counterexample":
        if n != 2:
            raise ValueError("counterexample matrices are 2x2; use --n 2")
        return counterexample_matrix(alpha, beta, _default_rotation()), None
    raise ValueError(f"unknown kind {kind!r}")


def _cmd_gen(args):
    n = args.n
    if args.kind == "thermal":
        if args.L is None:
            raise ValueError("gen --kind thermal requires --L")
        n = 2**args.L
    elif args.kind == "counterexample":
        n = 2
    elif n is None:
        raise ValueError(f"gen --kind {args.kind} requires --n")
    a, spectrum = _generate(
        args.kind,
        n,
        args.seed,
        identity_order=args.identity_order,
        alpha=args.alpha,
        beta=args.beta,
    )
    write_matrix(args.out, a)
    if spectrum is not None:
        write_matrix(args.out + ".spectrum", spectrum.reshape(-1, 1))
    print(f"kind={args.kind}")
    print(f"n={a.shape[0]}")
    print(f"out={args.out}")
    return 0


def _cmd_diag(args):
    a = read_matrix(args.input)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"input matrix must be square, got {a.shape}")
    state = RngState(args.seed)
    result = rand_diag(a, state)
    d = diag_of(a, result.u)
    if args.out_u:
        write_matrix(args.out_u, result.u)
    if args.out_d:
        write_matrix(args.out_d, d.reshape(-1, 1))
    print(f"offdiag_error={offdiag_error(a, result.u):.17g}")
    print(f"normality_residual={normality_residual(a):.17g}")
    return 0


def _cmd_schur(args):
    a = read_matrix(args.input)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"input matrix must be square, got {a.shape}")
    dec = schur(a)
    if args.out_u:
        write_matrix(args.out_u, dec.u)
    if args.out_t:
        write_matrix(args.out_t, dec.t)
    recon = matmul(matmul(dec.u, dec.t), dec.u.conj().T)
    print(f"reconstruction_residual={frobenius_norm(a - recon):.17g}")
    print(f"offdiag_t_norm={frobenius_norm(offdiag(dec.t)):.17g}")
    return 0


def _cmd_check(args):
    a = read_matrix(args.input)
    u = read_matrix(args.u)
    print(f"offdiag_error={offdiag_error(a, u):.17g}")
    if args.spectrum:
        spectrum = read_matrix(args.spectrum).ravel()
        d2 = diag_of(a, u)
        print(f"eig_relative_error={eig_relative_error(spectrum, d2):.17g}")
    return 0


def _run_bench_trial(task):
    """One (kind, n, run): generate the matrix, run each algorithm."""
    kind, n, run, trial_seed, algorithms = task
    state = RngState(trial_seed)
    spectrum = None
    if kind == "normal":
        a, spectrum = _generate(kind, n, trial_seed)
    else:
        a, _ = _generate(kind, n, trial_seed)
    records = []
    for alg in algorithms:
        try:
            if alg == "randdiag":
                t0 = time.perf_counter()
                result = rand_diag(a, state)
                dt = time.perf_counter() - t0
                basis = result.u
                d2 = diag_of(a, basis)
                err = offdiag_error(a, basis)
            else:
                t0 = time.perf_counter()
                dec = schur(a)
                dt = time.perf_counter() - t0
                err = frobenius_norm(offdiag(dec.t))
                d2 = np.diagonal(dec.t)
            rel = (
                eig_relative_error(spectrum, d2) if spectrum is not None else None
            )
            records.append(
                TrialRecord(
                    algorithm=alg,
                    n=n,
                    seed=trial_seed,
                    matrix_kind=kind,
                    offdiag_error=err,
                    eig_rel_error=rel,
                    wall_time_seconds=dt,
                )
            )
        except ConvergenceError:
            records.append(
                TrialRecord(
                    algorithm=alg,
                    n=n,
                    seed=trial_seed,
                    matrix_kind=kind,
                    offdiag_error=float("nan"),
                    eig_rel_error=None,
                    wall_time_seconds=time.perf_counter() - t0,
                )
            )
    return records


def _print_aggregates(records):
    groups = {}
    for rec in records:
        groups.setdefault((rec.algorithm, rec.matrix_kind, rec.n), []).append(rec)
    for (alg, kind, n), recs in sorted(groups.items()):
        errs = [r.offdiag_error for r in recs if not math.isnan(r.offdiag_error)]
        times = [r.wall_time_seconds for r in recs]
        prefix = f"algorithm={alg} kind={kind} n={n}"
        if errs:
            print(
                f"{prefix} offdiag_error_mean={statistics.fmean(errs):.4g} "
                f"offdiag_error_std={statistics.pstdev(errs):.4g} "
                f"offdiag_error_min={min(errs):.4g} "
                f"offdiag_error_max={max(errs):.4g}"
            )
        rels = [r.eig_rel_error for r in recs if r.eig_rel_error is not None]
        if rels:
            print(
                f"{prefix} eig_rel_error_mean={statistics.fmean(rels):.4g} "
                f"eig_rel_error_std={statistics.pstdev(rels):.4g} "
                f"eig_rel_error_min={min(rels):.4g} "
                f"eig_rel_error_max={max(rels):.4g}"
            )
        print(
            f"{prefix} time_mean={statistics.fmean(times):.4g} "
            f"time_median={statistics.median(times):.4g}"
        )
        failed = len(recs) - len(errs)
        if failed:
            print(f"{prefix} failed_trials={failed}")


def _cmd_bench(args):
    sizes = [int(v) for v in args.sizes.split(",") if v.strip()]
    if not sizes or any(n < 2 for n in sizes):
        raise ValueError("--sizes must list integers >= 2")
    if args.runs < 1:
        raise ValueError("--runs must be >= 1")
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    for kind in kinds:
        if kind not in _GEN_KINDS:
            raise ValueError(f"unknown kind {kind!r} (choose from {_GEN_KINDS})")
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    for alg in algorithms:
        if alg not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {alg!r} (choose from {ALGORITHMS})")

    tasks = [
        (kind, n, run, _trial_seed(args.seed, kind, n, run), tuple(algorithms))
        for kind in kinds
        for n in sizes
        for run in range(args.runs)
    ]
    records = []
    if args.no_parallel or len(tasks) == 1:
        batches = map(_run_bench_trial, tasks)
    else:
        executor = ProcessPoolExecutor()
        batches = executor.map(_run_bench_trial, tasks)
    try:
        for batch in batches:
            for rec in batch:
                append_trial(args.out, rec)
                records.append(rec)
    finally:
        if not (args.no_parallel or len(tasks) == 1):
            executor.shutdown()
    _print_aggregates(records)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="randdiag",
        description="Randomized diagonalization of complex normal matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate an experiment matrix")
    p_gen.add_argument("--kind", required=True, choices=_GEN_KINDS)
    p_gen.add_argument("--n", type=int, help="matrix dimension")
    p_gen.add_argument("--L", type=int, help="thermal model states (n = 2**L)")
    p_gen.add_argument("--alpha", type=float, default=1.0)
    p_gen.add_argument("--beta", type=float, default=1.0)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument(
        "--identity-order",
        action="store_true",
        help="apply thermal bond factors in order 1..L-1 instead of a random order",
    )
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=_cmd_gen)

    p_diag = sub.add_parser("diag", help="randomized diagonalization of a file")
    p_diag.add_argument("input")
    p_diag.add_argument("--seed", type=int, default=0)
    p_diag.add_argument("--out-u", help="write the unitary basis here")
    p_diag.add_argument("--out-d", help="write diag(U* A U) here (n x 1)")
    p_diag.set_defaults(func=_cmd_diag)

    p_schur = sub.add_parser("schur", help="Schur decomposition of a file")
    p_schur.add_argument("input")
    p_schur.add_argument("--out-u", help="write the unitary factor here")
    p_schur.add_argument("--out-t", help="write the triangular factor here")
    p_schur.set_defaults(func=_cmd_schur)

    p_bench = sub.add_parser("bench", help="run a seeded benchmark grid")
    p_bench.add_argument("--sizes", required=True, help="comma list, e.g. 8,16,32")
    p_bench.add_argument("--runs", type=int, default=10)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--kinds", default="unitary", help="comma list of kinds")
    p_bench.add_argument(
        "--algorithms", default="randdiag,schur", help="comma list of algorithms"
    )
    p_bench.add_argument("--out", required=True, help="CSV output path")
    p_bench.add_argument(
        "--no-parallel",
        action="store_true",
        help="run trials sequentially in-process (clean timings)",
    )
    p_bench.set_defaults(func=_cmd_bench)

    p_check = sub.add_parser("check", help="recompute metrics for A and U files")
    p_check.add_argument("input")
    p_check.add_argument("--u", required=True, help="unitary basis file")
    p_check.add_argument("--spectrum", help="ground-truth spectrum file (n x 1)")
    p_check.set_defaults(func=_cmd_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR
    except (MatrixMarketError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
