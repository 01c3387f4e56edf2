"""Kernel backend selection.

The compiled extension is preferred; the pure-Python module is a drop-in
fallback. Set SPINC_PURE=1 to force the fallback (used by the benchmark and
by tests that cross-check the two backends).
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("SPINC_PURE", "") not in ("", "0"):
    _impl = _kernel_py
else:
    try:
        from . import _blade_kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernel_py

mul_terms = _impl.mul_terms
blade_factor = _impl.blade_factor
swap_parity = _impl.swap_parity
BACKEND: str = _impl.BACKEND


def backend() -> str:
    """Name of the active kernel backend ('compiled' or 'pure')."""
    return BACKEND
