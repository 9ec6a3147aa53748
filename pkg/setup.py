"""Build glue for the optional compiled kernels.

The package works without the extension (a pure Python fallback is selected at
import time), so compilation failures are downgraded to a warning.
"""

import sys

from setuptools import Extension, setup


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("Cython not available; building without compiled kernels", file=sys.stderr)
        return []
    ext = Extension(
        "g3chabauty._kernels._ckernels",
        sources=["src/g3chabauty/_kernels/_ckernels.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


try:
    setup(ext_modules=_extensions())
except SystemExit:
    raise
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"extension build failed ({exc}); retrying pure Python", file=sys.stderr)
    setup(ext_modules=[])
