"""Backend selection for the exact kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module takes over. Setting ``COSETKIT_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("COSETKIT_PURE_PYTHON", "0") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
matmul_int64 = _impl.matmul_int64
bareiss_rank = _impl.bareiss_rank
bareiss_det = _impl.bareiss_det

__all__ = ["BACKEND", "matmul_int64", "bareiss_rank", "bareiss_det"]
