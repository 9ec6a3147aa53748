"""Kernel backend selection.

The compiled Cython extension is preferred when importable; the pure Python
module is a drop-in replacement.  Set G3CHABAUTY_KERNELS=py (or =c) to force
a backend, e.g. for benchmarking or debugging.
"""

import os

_choice = os.environ.get("G3CHABAUTY_KERNELS", "auto").lower()

if _choice in ("py", "python"):
    from . import _pykernels as _impl
elif _choice in ("c", "cython"):
    from . import _ckernels as _impl  # type: ignore[attr-defined]
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
poly_trim = _impl.poly_trim
poly_mul_mod = _impl.poly_mul_mod
poly_divmod_monic_mod = _impl.poly_divmod_monic_mod
poly_eval_mod = _impl.poly_eval_mod
fp_curve_points = _impl.fp_curve_points
count_points_gf = _impl.count_points_gf
search_x_squares = _impl.search_x_squares
