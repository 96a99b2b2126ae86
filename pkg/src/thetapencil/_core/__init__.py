"""Kernel backend selection.

Prefers the compiled _speedups extension when it was built; otherwise falls
back to the pure-Python implementation with identical semantics.  Set
THETAPENCIL_PURE=1 to force the fallback (the benchmark harness does).
"""
import os

if os.environ.get("THETAPENCIL_PURE"):
    from . import _pykernel as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernel as _impl

BACKEND = _impl.BACKEND
cv_add = _impl.cv_add
cv_sub = _impl.cv_sub
cv_neg = _impl.cv_neg
cv_scale = _impl.cv_scale
cv_mul = _impl.cv_mul
poly_add_into = _impl.poly_add_into
poly_scale = _impl.poly_scale
poly_mul = _impl.poly_mul

__all__ = [
    "BACKEND",
    "cv_add",
    "cv_sub",
    "cv_neg",
    "cv_scale",
    "cv_mul",
    "poly_add_into",
    "poly_scale",
    "poly_mul",
]
