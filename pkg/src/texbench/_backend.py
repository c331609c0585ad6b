"""Kernel backend selection.

Hot loops are written twice: a numba ``@njit`` kernel and a vectorised numpy
fallback.  Setting ``TEXBENCH_NO_NUMBA=1`` (or running without numba
installed) routes every call to the numpy path.  The flag is read once at
import time.
"""
import os

_DISABLED = os.environ.get("TEXBENCH_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by TEXBENCH_NO_NUMBA")
    from numba import njit
    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


BACKEND = "numba" if HAS_NUMBA else "numpy"


def select(nb_impl, np_impl):
    """Return the kernel matching the active backend."""
    return nb_impl if HAS_NUMBA else np_impl
