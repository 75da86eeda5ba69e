"""Kernel dispatch: numba when available, plain Python over numpy otherwise.

Set ``RESPECTCUT_DISABLE_NUMBA=1`` to force the pure-Python path. The flag is
read once at import time, so it has to be in the environment before
``respectcut`` is first imported.
"""

from __future__ import annotations

import os

ENV_FLAG = "RESPECTCUT_DISABLE_NUMBA"


def _disabled_by_env() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


try:
    if _disabled_by_env():
        raise ImportError
    import numba as _numba
except ImportError:
    _numba = None

USE_NUMBA = _numba is not None
BACKEND = "numba" if USE_NUMBA else "python"


def kernel(fn=None, **options):
    """Compile ``fn`` with ``numba.njit`` or return it untouched."""

    def wrap(f):
        if not USE_NUMBA:
            return f
        opts = {"cache": True, "nogil": True}
        opts.update(options)
        return _numba.njit(**opts)(f)

    if fn is None:
        return wrap
    return wrap(fn)
