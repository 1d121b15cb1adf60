"""Numba switch.

Kernels are written once as plain loops over numpy arrays. When numba is
importable and ``DENSEST_DISABLE_NUMBA`` is unset they are compiled with
``@njit``; otherwise the same functions run as ordinary Python. Both paths
draw from the same ``numpy.random.Generator`` in the same order, so they
produce bit-identical results.
"""

import os

_FLAG = "DENSEST_DISABLE_NUMBA"

_disabled = os.environ.get(_FLAG, "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _disabled:
        raise ImportError(f"{_FLAG} is set")
    from numba import njit as _numba_njit

    USING_NUMBA = True
except ImportError:
    _numba_njit = None
    USING_NUMBA = False


def njit(*args, **kwargs):
    if USING_NUMBA:
        return _numba_njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda func: func


def backend() -> str:
    return "numba" if USING_NUMBA else "python"
