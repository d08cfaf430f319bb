"""Kernel backend selection.

The hot numeric kernels (upper incomplete gamma, twisted series
accumulation, curve point counting) ship in two interchangeable
implementations:

* ``_kernels_numba`` -- scalar loops compiled with ``numba.njit`` (default),
* ``_kernels_numpy`` -- vectorized pure-numpy fallback.

The ``ADDTWIST_BACKEND`` environment variable picks one at import time:
``auto`` (default: numba if importable, else numpy), ``numba`` or ``numpy``.
``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os

_requested = os.environ.get("ADDTWIST_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"ADDTWIST_BACKEND must be one of auto|numba|numpy, got {_requested!r}"
    )

if _requested in ("auto", "numba"):
    try:
        from . import _kernels_numba as kernels
    except ImportError:
        if _requested == "numba":
            raise
        from . import _kernels_numpy as kernels
else:
    from . import _kernels_numpy as kernels

backend_name: str = kernels.BACKEND

__all__ = ["kernels", "backend_name"]
