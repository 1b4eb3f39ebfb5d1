"""Kernel selection: compiled extension when built, pure Python otherwise.

Set ``SZERO_PURE=1`` to force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
bott = _kernels_py.bott
lr_expand = _kernels_py.lr_expand

if not os.environ.get("SZERO_PURE"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None
    if _compiled is not None:
        bott = _compiled.bott
        lr_expand = _compiled.lr_expand
        BACKEND = "cython"

__all__ = ["BACKEND", "bott", "lr_expand"]
