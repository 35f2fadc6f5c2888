"""JIT backend selection.

Hot numeric kernels live in :mod:`bregopt._scalar` and are decorated with the
``njit`` exported here.  By default that is ``numba.njit``; setting the
environment variable ``BREGOPT_DISABLE_NUMBA`` to anything but ``0`` (or
running without numba installed) swaps in an identity decorator so the same
source runs as plain numpy/Python.  ``benchmarks/bench_backends.py`` compares
the two paths.
"""

import os

_ENV_FLAG = "BREGOPT_DISABLE_NUMBA"


def _want_numba() -> bool:
    flag = os.environ.get(_ENV_FLAG, "").strip()
    if flag not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _want_numba()

if NUMBA_ENABLED:
    from numba import njit as _numba_njit

    def njit(*args, **kwargs):
        kwargs.setdefault("cache", True)
        return _numba_njit(*args, **kwargs)

else:

    def njit(*args, **kwargs):
        if args and callable(args[0]) and len(args) == 1 and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
