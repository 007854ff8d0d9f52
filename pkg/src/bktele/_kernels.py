"""Kernel dispatch: the compiled module when importable, else the numpy
fallback. Set ``BKTELE_PURE_PYTHON=1`` to force the fallback."""

from __future__ import annotations

import os

if os.environ.get("BKTELE_PURE_PYTHON"):
    from . import _pykern as impl
    IMPLEMENTATION = "python"
else:
    try:
        from . import _corekern as impl  # type: ignore[no-redef]
        IMPLEMENTATION = "compiled"
    except ImportError:
        from . import _pykern as impl
        IMPLEMENTATION = "python"

UNPHYS = impl.UNPHYS
SEP = impl.SEP
REGION_I = impl.REGION_I
REGION_II = impl.REGION_II
REGION_III = impl.REGION_III
REGION_V = impl.REGION_V

classify_one = impl.classify_one
det_e = impl.det_e
region_grid = impl.region_grid
surface_grid = impl.surface_grid
best_gain_ratio = impl.best_gain_ratio
robustness_grid = impl.robustness_grid
