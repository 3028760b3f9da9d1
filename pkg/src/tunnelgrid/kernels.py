"""Stencil kernel backend selection.

Prefers the compiled extension; falls back to the NumPy implementation
when the build is unavailable.  Set TUNNELGRID_FORCE_PY_KERNELS=1 before
import to force the fallback (used by the backend-comparison benchmark
and tests).
"""

import os

if os.environ.get("TUNNELGRID_FORCE_PY_KERNELS") == "1":
    from . import _stencil_py as backend
else:
    try:
        from . import _stencil as backend  # type: ignore[attr-defined]
    except ImportError:
        from . import _stencil_py as backend

diag_apply = backend.diag_apply
add_neighbors_axis = backend.add_neighbors_axis


def backend_name() -> str:
    return "compiled" if backend.COMPILED else "numpy"
