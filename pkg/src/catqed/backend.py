"""Kernel backend selection.

Prefers the compiled extension; falls back to the numpy implementation when
the extension was not built.  Set ``CATQED_FORCE_PURE=1`` to force the
fallback (used by the backend-parity tests and the benchmark).
"""

import os

if os.environ.get("CATQED_FORCE_PURE"):
    from . import _kernels_py as kernels

    KERNEL_BACKEND = "pure"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        KERNEL_BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels

        KERNEL_BACKEND = "pure"

__all__ = ["kernels", "KERNEL_BACKEND"]
