"""Kernel backend selection.

Prefers the compiled extension, falls back to the pure-Python kernels.
Set MOBIUSTREE_PURE=1 to force the fallback (useful for benchmarking and
debugging).  ``BACKEND`` reports which one is active.
"""

import os

if os.environ.get("MOBIUSTREE_PURE") == "1":
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as _impl

BACKEND: str = _impl.BACKEND

ext_gcd_raw = _impl.ext_gcd_raw
euclid_quotients_raw = _impl.euclid_quotients_raw
cf_eval_raw = _impl.cf_eval_raw
path_to_matrix_raw = _impl.path_to_matrix_raw
matrix_to_path_raw = _impl.matrix_to_path_raw
mat_mul_raw = _impl.mat_mul_raw
cmp_raw = _impl.cmp_raw

__all__ = [
    "BACKEND",
    "ext_gcd_raw",
    "euclid_quotients_raw",
    "cf_eval_raw",
    "path_to_matrix_raw",
    "matrix_to_path_raw",
    "mat_mul_raw",
    "cmp_raw",
]
