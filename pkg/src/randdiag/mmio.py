"""Matrix and result persistence.

Matrices travel as Matrix Market *array complex general* files (text,
column-major data order, 17 significant digits so binary64 values survive a
round trip).  Benchmark trials append to a plain CSV with one row per
(algorithm, matrix) run.
"""

import csv
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import as_matrix

__all__ = [
    "MatrixMarketError",
    "TrialRecord",
    "CSV_FIELDS",
    "write_matrix",
    "read_matrix",
    "append_trial",
    "read_trials",
]

_HEADER = "%%MatrixMarket matrix array complex general"

ALGORITHMS = ("randdiag", "schur")
MATRIX_KINDS = ("unitary", "normal", "thermal", "counterexample", "file")

CSV_FIELDS = [
    "algorithm",
    "n",
    "seed",
    "matrix_kind",
    "offdiag_error",
    "eig_rel_error",
    "wall_time_seconds",
]


class MatrixMarketError(ValueError):
    """Malformed Matrix Market input; carries the offending line number."""

    def __init__(self, message, line_no=None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


@dataclass
class TrialRecord:
    """One benchmark run, serialized as a CSV row."""

    algorithm: str
    n: int
    seed: int
    matrix_kind: str
    offdiag_error: float
    eig_rel_error: Optional[float]
    wall_time_seconds: float

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.matrix_kind not in MATRIX_KINDS:
            raise ValueError(f"unknown matrix_kind {self.matrix_kind!r}")


def write_matrix(path, a):
    """Write a matrix in Matrix Market array complex general format.

    Column-major data order, one ``re im`` pair per line, 17 significant
    digits, ``\\n`` line endings.
    """
    a = as_matrix(a)
    rows, cols = a.shape
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(_HEADER + "\n")
        fh.write(f"{rows} {cols}\n")
        for j in range(cols):
            for i in range(rows):
                z = a[i, j]
                fh.write(f"{z.real:.16e} {z.imag:.16e}\n")


def read_matrix(path):
    """Parse a Matrix Market array complex general file.

    Tolerates ``%`` comment lines, blank lines, arbitrary whitespace and
    ``\\r\\n`` endings.  Rejects non-complex field types with an explicit
    message and checks the declared entry count.
    """
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise MatrixMarketError("empty file, expected a MatrixMarket header", 1)
    header = lines[0].strip()
    tokens = header.split()
    if not tokens or not tokens[0].lower().startswith("%%matrixmarket"):
        raise MatrixMarketError(
            f"missing '%%MatrixMarket' banner, got {header!r}", 1
        )
    if len(tokens) != 5:
        raise MatrixMarketError(
            f"header must be '%%MatrixMarket matrix array complex general', got {header!r}",
            1,
        )
    obj, fmt, field, symmetry = (t.lower() for t in tokens[1:])
    if obj != "matrix":
        raise MatrixMarketError(f"unsupported object {obj!r}, expected 'matrix'", 1)
    if fmt != "array":
        raise MatrixMarketError(f"unsupported format {fmt!r}, expected 'array'", 1)
    if field != "complex":
        raise MatrixMarketError(
            f"unsupported field {field!r}: this reader handles the complex "
            "array format; rewrite the file with 'complex' entries (re im pairs)",
            1,
        )
    if symmetry != "general":
        raise MatrixMarketError(
            f"unsupported symmetry {symmetry!r}, expected 'general'", 1
        )

    dims = None
    values = []
    for line_no, raw in enumerate(lines[1:], start=2):
        stripped = raw.strip()
        if not stripped or stripped.startswith("%"):
            continue
        parts = stripped.split()
        if dims is None:
            if len(parts) != 2:
                raise MatrixMarketError(
                    f"expected dimensions 'rows cols', got {stripped!r}", line_no
                )
            try:
                rows, cols = int(parts[0]), int(parts[1])
            except ValueError:
                raise MatrixMarketError(
                    f"non-integer dimensions {stripped!r}", line_no
                ) from None
            if rows < 1 or cols < 1:
                raise MatrixMarketError(
                    f"dimensions must be positive, got {rows} x {cols}", line_no
                )
            dims = (rows, cols)
            continue
        try:
            for tok in parts:
                values.append(float(tok))
        except ValueError:
            raise MatrixMarketError(
                f"unparseable numeric data {stripped!r}", line_no
            ) from None
    if dims is None:
        raise MatrixMarketError("missing dimensions line", len(lines))
    rows, cols = dims
    expected = 2 * rows * cols
    if len(values) != expected:
        raise MatrixMarketError(
            f"entry count mismatch: {rows} x {cols} complex matrix needs "
            f"{expected} numbers ({rows * cols} 're im' pairs), found {len(values)}",
            len(lines),
        )
    buf = np.asarray(values).reshape(rows * cols, 2)
    flat = buf[:, 0] + 1j * buf[:, 1]
    return np.ascontiguousarray(flat.reshape(cols, rows).T)


def append_trial(path, record):
    """Append one trial row, writing the header when the file is new.

    ``eig_rel_error`` serializes to the empty string when absent; a failed
    trial is flagged by ``offdiag_error = nan``.
    """
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", encoding="ascii", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if fresh:
            writer.writerow(CSV_FIELDS)
        err = "" if record.eig_rel_error is None else repr(float(record.eig_rel_error))
        writer.writerow(
            [
                record.algorithm,
                record.n,
                record.seed,
                record.matrix_kind,
                repr(float(record.offdiag_error)),
                err,
                f"{record.wall_time_seconds:.4g}",
            ]
        )


def read_trials(path):
    """Load trial rows back from a CSV written by :func:`append_trial`."""
    out = []
    with open(path, "r", encoding="ascii", newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(
                TrialRecord(
                    algorithm=row["algorithm"],
                    n=int(row["n"]),
                    seed=int(row["seed"]),
                    matrix_kind=row["matrix_kind"],
                    offdiag_error=float(row["offdiag_error"]),
                    eig_rel_error=(
                        float(row["eig_rel_error"]) if row["eig_rel_error"] else None
                    ),
                    wall_time_seconds=float(row["wall_time_seconds"]),
                )
            )
    return out
