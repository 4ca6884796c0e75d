"""Backend switch for the numeric kernels.

Kernels are written once as plain Python over numpy arrays.  When numba is
importable and ``FANOQSM_BACKEND`` is not ``numpy`` they are compiled with
``numba.njit``; otherwise the plain functions run as-is.
"""

from __future__ import annotations

import os

BACKEND_ENV = "FANOQSM_BACKEND"

_requested = os.environ.get(BACKEND_ENV, "numba").strip().lower()

try:
    if _requested == "numpy":
        raise ImportError
    import numba as _numba

    USE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    _numba = None
    USE_NUMBA = False


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def jit(func):
    """Compile ``func`` in nopython mode when the numba backend is active."""
    if USE_NUMBA:
        return _numba.njit(cache=True, nogil=True)(func)
    return func
