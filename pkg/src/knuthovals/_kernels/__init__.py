"""Scan-kernel backend selection.

The compiled Cython extension is preferred; the numpy fallback is used when
it is missing or when KNUTHOVALS_KERNEL=numpy is set.  Both backends share
one contract and are cross-checked in the test suite.
"""

from __future__ import annotations

import os

from . import fallback

_impl = fallback
if os.environ.get("KNUTHOVALS_KERNEL", "").lower() not in ("numpy", "fallback"):
    try:
        from . import _scan as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

BACKEND: str = _impl.BACKEND


def scan_type_a(contrib, star, start, stop):
    return _impl.scan_type_a(contrib, star, start, stop)


def scan_type_b(contrib, star, start, stop):
    return _impl.scan_type_b(contrib, star, start, stop)
