"""smalldiv: small-divisor scans and shifted-target approximation tools."""

from .kernels import IMPL as kernel_impl

__version__ = "0.1.0"

__all__ = ["kernel_impl", "__version__"]
