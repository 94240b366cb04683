"""Grid-kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
fallback is used. Setting ``ISONLCS_FORCE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("ISONLCS_FORCE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"

sfunc_points = _impl.sfunc_points
quadrature_points = _impl.quadrature_points
