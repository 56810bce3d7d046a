"""Numeric backend selection.

Hot kernels (see kernels.py) exist twice: a numba @njit build and a pure
numpy build.  The njit build is used when numba imports cleanly, unless
the environment variable GUESSGAP_PURE_NUMPY is set to 1/true/yes/on,
which forces the numpy path.  The choice is made once at import time so
a process never mixes backends.
"""

import os

_FORCE_NUMPY = os.environ.get("GUESSGAP_PURE_NUMPY", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}

try:
    from numba import njit  # noqa: F401

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only on stripped installs
    NUMBA_AVAILABLE = False

USING_NUMBA = NUMBA_AVAILABLE and not _FORCE_NUMPY


def backend_name() -> str:
    return "numba" if USING_NUMBA else "numpy"
