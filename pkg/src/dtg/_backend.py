"""Kernel backend selection.

The compiled extension (dtg._kernels) is preferred when it was built; the
pure numpy module is the fallback and the reference. Set DTG_PURE=1 to force
the pure lane (used by tests and the backend benchmark).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("DTG_PURE", "") not in ("", "0"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py

BACKEND = kernels.BACKEND
