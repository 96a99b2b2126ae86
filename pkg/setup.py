"""Build hook for the optional compiled kernel.

The package is pure Python; _speedups is a drop-in accelerator for the
coefficient and monomial loops.  If Cython (or a C compiler) is missing the
extension is skipped and the pure kernel is selected at import time.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "thetapencil._core._speedups",
                ["src/thetapencil/_core/_speedups.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
