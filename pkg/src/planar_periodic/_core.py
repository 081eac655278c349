"""Backend selection for the integration kernel.

The compiled extension is used when it imports; ``PLANAR_PERIODIC_PURE=1``
forces the pure-Python twin.
"""
import os

from . import _pure

if os.environ.get("PLANAR_PERIODIC_PURE", "") not in ("", "0"):
    kernel = _pure
    BACKEND = "python"
else:
    try:
        from . import _kernel as kernel
        BACKEND = "compiled"
    except ImportError:
        kernel = _pure
        BACKEND = "python"

pure = _pure
