"""Backend selection for the hot kernels.

The compiled extension is preferred when it imported cleanly; otherwise the
numpy lane is used. Set ``HSISTEG_BACKEND=numpy`` or ``HSISTEG_BACKEND=c``
to force a lane (forcing ``c`` raises if the extension is missing).
"""

from __future__ import annotations

import os

from . import _kernels_np


def _select():
    forced = os.environ.get("HSISTEG_BACKEND", "").strip().lower()
    if forced == "numpy":
        return _kernels_np
    try:
        from . import _kernels_c
    except ImportError:
        if forced == "c":
            raise ImportError(
                "HSISTEG_BACKEND=c but the compiled extension is not available"
            ) from None
        return _kernels_np
    return _kernels_c


_impl = _select()

BACKEND = _impl.BACKEND_NAME
rgb_to_hsi_planes = _impl.rgb_to_hsi_planes
hsi_to_rgb_planes = _impl.hsi_to_rgb_planes
enforce_lsb_bits = _impl.enforce_lsb_bits


def get_backend() -> str:
    """Name of the active kernel lane, ``"c"`` or ``"numpy"``."""
    return BACKEND
