"""Modular linear algebra kernels, compiled when available.

The Cython extension ``_ckernels`` is used if it was built; otherwise the
pure-Python module ``_pykernels`` is used.  Setting ``QI_PURE_PYTHON=1`` in
the environment forces the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("QI_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
else:
    _impl = _pykernels

rref_mod_p = _impl.rref_mod_p
rank_mod_p = _impl.rank_mod_p
det_mod_p = _impl.det_mod_p

__all__ = ["BACKEND", "rref_mod_p", "rank_mod_p", "det_mod_p"]
