# src/lyndon_bwt/utils/jit.py
"""
jit.py

Compiles the sequential array kernels with numba when it is installed.

Dependencies:
    - numba (optional, ``jit`` extra)

Without numba, ``njit`` returns the function unchanged: the kernels are
written in the numba subset of Python and numpy, so they run as plain
Python with identical results, only slower.
"""

import logging

logger = logging.getLogger(__name__)

try:
    from numba import njit as _numba_njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on the environment
    _numba_njit = None
    HAVE_NUMBA = False
    logger.debug("numba not available; array kernels run as plain Python.")


def njit(*args, **kwargs):
    """Drop-in for ``numba.njit`` supporting both ``@njit`` and ``@njit(cache=True)``."""
    if HAVE_NUMBA:
        return _numba_njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda func: func
