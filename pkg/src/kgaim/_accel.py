"""Optional numba acceleration.

Hot kernels are written once in numba-compatible Python and wrapped with
:func:`jit`.  Setting ``KGAIM_NUMBA=0`` in the environment (or running without
numba installed) leaves them as plain Python/numpy functions.
"""

import os

_FLAG = os.environ.get("KGAIM_NUMBA", "1").strip().lower()

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and _FLAG not in ("0", "false", "no", "off")


def jit(func):
    """Compile ``func`` with ``numba.njit`` when acceleration is enabled.

    The returned object always exposes ``py_func`` so callers (and the
    benchmark) can reach the interpreted version.
    """
    if USE_NUMBA:
        return numba.njit(cache=True)(func)
    func.py_func = func
    return func
