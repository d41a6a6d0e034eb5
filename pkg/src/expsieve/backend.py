"""Kernel backend selection.

Every hot loop in :mod:`expsieve.kernels` exists twice: a numba-compiled
version and a pure-numpy one with identical semantics.  The environment
variable ``EXPSIEVE_BACKEND`` picks one explicitly (``numba`` or ``numpy``);
when unset, numba is used if it imports cleanly.  The choice is made once
at import time so a process never mixes backends.
"""

import os

ENV_VAR = "EXPSIEVE_BACKEND"


def _detect():
    choice = os.environ.get(ENV_VAR, "").strip().lower()
    if choice not in ("", "auto", "numba", "numpy"):
        raise RuntimeError(
            f"{ENV_VAR} must be 'numba' or 'numpy', got {choice!r}"
        )
    if choice == "numpy":
        return "numpy", None
    try:
        import numba
    except ImportError:
        if choice == "numba":
            raise RuntimeError(f"{ENV_VAR}=numba but numba is not importable")
        return "numpy", None
    return "numba", numba


BACKEND, _numba = _detect()
NUMBA_ENABLED = BACKEND == "numba"

njit = _numba.njit if NUMBA_ENABLED else None


def active_backend() -> str:
    """Name of the kernel backend in use: 'numba' or 'numpy'."""
    return BACKEND


def set_num_threads(n: int) -> None:
    """Cap numba's thread pool.  No-op on the numpy backend."""
    if NUMBA_ENABLED and n >= 1:
        try:
            _numba.set_num_threads(min(n, _numba.config.NUMBA_NUM_THREADS))
        except Exception:
            pass
