"""Scan kernels: the compiled module when available, else the pure-Python one.

Set ``EFUNC_PURE_PYTHON=1`` to force the pure-Python kernels.
"""

import os

BACKEND = "python"
if os.environ.get("EFUNC_PURE_PYTHON", "") not in ("", "0"):
    from . import _scan_py as scan
else:
    try:
        from . import _scan as scan
        BACKEND = "cython"
    except ImportError:
        from . import _scan_py as scan

__all__ = ["scan", "BACKEND"]
