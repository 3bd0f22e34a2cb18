"""Kernel selection: compiled hot kernels with a pure-Python fallback.

The compiled extension is preferred; set ENTKIT_PURE_PYTHON=1 to force the
fallback (used by the parity tests and the benchmark).
"""

import os

if os.environ.get("ENTKIT_PURE_PYTHON"):
    from ._jacobi_py import givens_isometry, jacobi_eigh

    KERNEL_BACKEND = "python"
else:
    try:
        from ._jacobi import givens_isometry, jacobi_eigh

        KERNEL_BACKEND = "cython"
    except ImportError:
        from ._jacobi_py import givens_isometry, jacobi_eigh

        KERNEL_BACKEND = "python"

__all__ = ["givens_isometry", "jacobi_eigh", "KERNEL_BACKEND"]
