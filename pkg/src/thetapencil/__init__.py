"""thetapencil: exact bracket pencils from periodic Lie algebra gradings."""

from ._core import BACKEND as kernel_backend

__version__ = "0.1.0"

__all__ = ["kernel_backend", "__version__"]
