"""Kernel backend selection.

Hot numeric kernels exist in two implementations with identical call
signatures and semantics:

* :mod:`randdiag._kernels_numba` -- scalar loops compiled with ``numba.njit``
  (the fast path, used whenever numba is importable),
* :mod:`randdiag._kernels_numpy` -- the same algorithms with vectorized
  numpy inner loops (pure-numpy fallback).

The environment variable ``RANDDIAG_BACKEND`` picks the backend at import
time: ``auto`` (default), ``numba``, or ``numpy``.  ``auto`` uses numba when
available and silently falls back to numpy otherwise; ``numba`` raises if
numba cannot be imported.  Run ``benchmarks/compare_backends.py`` to measure
the difference on your machine.
"""

import os

_ENV_VAR = "RANDDIAG_BACKEND"


def _select():
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"{_ENV_VAR}={choice!r}: expected 'auto', 'numba' or 'numpy'"
        )
    if choice in ("auto", "numba"):
        try:
            from . import _kernels_numba as mod
            return mod, "numba"
        except ImportError:
            if choice == "numba":
                raise RuntimeError(
                    f"{_ENV_VAR}=numba requested but numba is not importable"
                )
    from . import _kernels_numpy as mod
    return mod, "numpy"


kernels, _BACKEND_NAME = _select()


def active_backend() -> str:
    """Name of the kernel backend in use: ``"numba"`` or ``"numpy"``."""
    return _BACKEND_NAME
