"""Kernel backend selection: compiled extension if present, else pure Python."""

import os

if os.environ.get("QLOOP_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
conv = _impl.conv
dict_mul = _impl.dict_mul
dict_addmul = _impl.dict_addmul
