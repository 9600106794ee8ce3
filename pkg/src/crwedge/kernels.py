"""Backend selection for the arc-scan kernel.

Prefers the compiled extension, falls back to the numpy implementation.
CRWEDGE_PURE_PYTHON=1 forces the fallback (useful for benchmarks and for
checking that both backends agree).
"""

import os

from . import _arcscan_py

if os.environ.get("CRWEDGE_PURE_PYTHON") == "1":
    _impl = _arcscan_py
    BACKEND = "python"
else:
    try:
        from . import _arcscan as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _arcscan_py
        BACKEND = "python"

arc_measure = _impl.arc_measure
arc_measure_batch = _impl.arc_measure_batch


def available_backends():
    """Mapping backend name -> module, for benchmarks and cross-checks."""
    backends = {"python": _arcscan_py}
    try:
        from . import _arcscan  # type: ignore[attr-defined]

        backends["compiled"] = _arcscan
    except ImportError:
        pass
    return backends
