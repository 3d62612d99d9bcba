"""Exact computations on the Vinberg monoid of SL_n and group affine Springer fibers."""

from .errors import NonCompact, PrecisionExhausted, Unsupported, ValidationError, WindowNotSaturated

__version__ = "0.1.0"

__all__ = [
    "NonCompact",
    "PrecisionExhausted",
    "Unsupported",
    "ValidationError",
    "WindowNotSaturated",
    "__version__",
]
