"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
twin.  Setting ``LENSHODGE_BACKEND=python`` forces the fallback.
"""
import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

if os.environ.get("LENSHODGE_BACKEND", "").lower() == "python" or _compiled is None:
    BACKEND = "python"
else:
    BACKEND = "cython"

_COMPILED_P_LIMIT = 2**32


def _pick(p):
    if BACKEND == "cython" and p < _COMPILED_P_LIMIT:
        return _compiled
    return _kernels_py


def hodge_accumulate(exps, mults, kmax, p, wpow):
    return _pick(p).hodge_accumulate(exps, mults, kmax, p, wpow)


def rational_sums(exps, xs, ys, p, wpow):
    return _pick(p).rational_sums(exps, xs, ys, p, wpow)
