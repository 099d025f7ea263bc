"""Hot integer kernels with a compiled backend and a pure-Python fallback.

The compiled extension is used when it imports and ``ARR_PURE_PYTHON`` is
unset.  Calls it cannot serve (more than 64 hyperplanes, int64 overflow)
are rerun on the pure path, so results never depend on the backend.
"""
from __future__ import annotations

import os

from . import _pure

try:
    if os.environ.get("ARR_PURE_PYTHON"):
        raise ImportError("pure backend forced")
    from . import _ckernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def _dispatch(name):
    pure = getattr(_pure, name)
    if _compiled is None:
        return pure
    fast = getattr(_compiled, name)

    def call(*args):
        try:
            return fast(*args)
        except (OverflowError, ValueError):
            return pure(*args)

    call.__name__ = name
    call.__doc__ = pure.__doc__
    return call


rank_of = _dispatch("rank_of")
closure_of = _dispatch("closure_of")
build_flats = _dispatch("build_flats")
moebius = _dispatch("moebius")
topes = _dispatch("topes")

__all__ = ["BACKEND", "rank_of", "closure_of", "build_flats", "moebius", "topes"]
