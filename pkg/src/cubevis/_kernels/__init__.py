"""Kernel backend selection: compiled extension if available, else pure Python.

Set CUBEVIS_PURE=1 to force the fallback (used by the benchmark and the
backend-agreement tests).
"""

import os

from cubevis._kernels import _visibility_py as _py

if os.environ.get("CUBEVIS_PURE") == "1":
    _impl = _py
    BACKEND = "python"
else:
    try:
        from cubevis._kernels import _visibility_c as _impl  # type: ignore

        BACKEND = "c"
    except ImportError:
        _impl = _py
        BACKEND = "python"

VARIANT_MUTUAL = _py.VARIANT_MUTUAL
VARIANT_TOTAL = _py.VARIANT_TOTAL
VARIANT_OUTER = _py.VARIANT_OUTER
VARIANT_DUAL = _py.VARIANT_DUAL

pair_visible = _impl.pair_visible
find_witness = _impl.find_witness
total_distance_witness = _impl.total_distance_witness
dual_characterization_witness = _impl.dual_characterization_witness


def backends():
    """All importable backends, name -> module (for benchmarks/tests)."""
    out = {"python": _py}
    try:
        from cubevis._kernels import _visibility_c  # type: ignore

        out["c"] = _visibility_c
    except ImportError:
        pass
    return out
