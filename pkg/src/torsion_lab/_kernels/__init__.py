"""Coefficient kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it imports cleanly.  Setting
``TORSION_LAB_PURE=1`` forces the fallback.  ``BACKEND`` names the active one.
"""

import os

from . import _pykernels as pure

compiled = None
if os.environ.get("TORSION_LAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

if compiled is not None:
    convolve = compiled.convolve
    convolve_trunc = compiled.convolve_trunc
    series_div = compiled.series_div
    divexact = compiled.divexact
    BACKEND = "cython"
else:
    convolve = pure.convolve
    convolve_trunc = pure.convolve_trunc
    series_div = pure.series_div
    divexact = pure.divexact
    BACKEND = "python"

__all__ = ["BACKEND", "convolve", "convolve_trunc", "series_div", "divexact", "pure", "compiled"]
