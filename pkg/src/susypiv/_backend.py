"""Kernel backend selection.

Prefers the compiled extension; falls back to the numpy implementation when
the extension was not built.  Set SUSYPIV_PURE_PY=1 to force the fallback
(used by the benchmark and for debugging).
"""

import os

if os.environ.get("SUSYPIV_PURE_PY"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels


def backend_name() -> str:
    """Either "compiled" or "python"."""
    return kernels.BACKEND
