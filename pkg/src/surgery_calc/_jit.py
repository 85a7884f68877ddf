"""Optional numba compilation for the hot integer kernels.

Set ``SURGERY_CALC_NUMBA=0`` to force the pure-Python/numpy path.  The flag is
read once at import time.
"""

from __future__ import annotations

import os

_FLAG = os.environ.get("SURGERY_CALC_NUMBA", "1").strip().lower()

try:
    if _FLAG in ("0", "false", "no", "off"):
        raise ImportError("numba disabled by SURGERY_CALC_NUMBA")
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    _njit = None
    HAVE_NUMBA = False


def kernel(fn):
    """Compile ``fn`` with numba when enabled, otherwise return it unchanged."""
    if HAVE_NUMBA:
        return _njit(cache=True, nogil=True)(fn)
    return fn


def backend() -> str:
    return "numba" if HAVE_NUMBA else "python"
