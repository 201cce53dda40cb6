"""Kernel selection: compiled Cython core when built, pure Python otherwise.

Set ``CHIPFIRE_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernel

KERNELS = {"python": _pykernel.run}

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None
else:
    KERNELS["cython"] = _ckernel.run

if _ckernel is not None and not os.environ.get("CHIPFIRE_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

run = KERNELS[BACKEND]
