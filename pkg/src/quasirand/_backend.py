"""Selects the compiled kernels when available, else the numpy fallback.

Set ``QUASIRAND_BACKEND=python`` to force the fallback.
"""

import os

from . import _fallback

if os.environ.get("QUASIRAND_BACKEND", "").lower() == "python":
    _impl = _fallback
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _fallback

BACKEND = "cython" if _impl is not _fallback else "python"
naive_sum = _impl.naive_sum
edge_products = _impl.edge_products


def threads() -> int:
    """Worker cap from ``QUASIRAND_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("QUASIRAND_THREADS", "1")))
    except ValueError:
        return 1
