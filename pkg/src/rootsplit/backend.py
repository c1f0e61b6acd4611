"""Kernel backend selection: numba JIT by default, plain Python on request.

Set ROOTSPLIT_NO_NUMBA=1 to run every kernel as ordinary Python over numpy
arrays. Both paths execute the same source, so results are bit-identical;
only wall time changes. The flag is also the escape hatch on platforms where
numba fails to import.
"""

import os

DISABLE_ENV = "ROOTSPLIT_NO_NUMBA"
_FALSEY = ("", "0", "false", "no", "off")


def _numba_requested() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() in _FALSEY


def _detect() -> bool:
    if not _numba_requested():
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _detect()

if NUMBA_ENABLED:
    import numba

    def jit(fn):
        return numba.njit(cache=True)(fn)

else:

    def jit(fn):
        return fn


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "python"
