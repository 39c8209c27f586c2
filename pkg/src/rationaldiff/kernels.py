"""Orbit kernels with backend selection.

The compiled extension is used when it was built; otherwise the pure-Python
implementation is loaded. Set ``RATIONALDIFF_PURE_PYTHON=1`` to force the
fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("RATIONALDIFF_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

riccati_orbit = _impl.riccati_orbit
so_orbit = _impl.so_orbit
riccati_orbits = _impl.riccati_orbits
so_orbits = _impl.so_orbits

__all__ = ["BACKEND", "riccati_orbit", "so_orbit", "riccati_orbits", "so_orbits"]
