"""Hot-loop kernels with a compiled backend and a pure-Python fallback.

The compiled extension ``_ckernels`` is used when it imports; setting
``ROTSLICE_PURE_PYTHON=1`` forces the fallback.  Both backends expose the
same four functions and must agree exactly.
"""
import importlib
import os

from . import _pykernels

_FORCE_PURE = os.environ.get("ROTSLICE_PURE_PYTHON", "").strip() not in ("", "0")

try:
    if _FORCE_PURE:
        raise ImportError("pure-Python backend requested")
    from . import _ckernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

ap_first = _impl.ap_first
count_word = _impl.count_word
max_window_sum = _impl.max_window_sum
greedy_directions = _impl.greedy_directions


def available_backends():
    names = ["python"]
    try:
        importlib.import_module(f"{__name__}._ckernels")
        names.append("cython")
    except ImportError:
        pass
    return names


def backend(name):
    """Return the kernel module for ``name`` (``"python"`` or ``"cython"``)."""
    if name == "python":
        return _pykernels
    if name == "cython":
        return importlib.import_module(f"{__name__}._ckernels")
    raise ValueError(f"unknown kernel backend {name!r}")


__all__ = ["BACKEND", "ap_first", "count_word", "max_window_sum", "greedy_directions",
           "available_backends", "backend"]
