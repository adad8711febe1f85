"""Backend selection for the numeric kernels.

The kernels in :mod:`gradedgroups.kernels` exist twice: a numba ``@njit``
version and a vectorised numpy version. Set ``GRADEDGROUPS_DISABLE_NUMBA=1``
before import to force the numpy path (useful for debugging and for
platforms without numba).
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional speedup
    numba = None

_DISABLED = os.environ.get("GRADEDGROUPS_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(func):
    """Compile ``func`` with numba when available, else return it unchanged."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True)(func)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
