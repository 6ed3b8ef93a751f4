"""Kernel backend selection.

The innermost loops (Gaussian cell probabilities against a saturating
partition, entropy accumulation) are shipped both as a compiled extension and
as a NumPy fallback with an identical contract.  The compiled backend is
preferred when present; set ``QTWC_NO_EXT=1`` before import to force the
fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("QTWC_NO_EXT"):
    _impl = _kernels_py
    BACKEND = "numpy"
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "numpy"

TINY_PROB = _kernels_py.TINY_PROB

cell_pmf = _impl.cell_pmf
row_entropies_bits = _impl.row_entropies_bits
weighted_cell_entropy = _impl.weighted_cell_entropy


def backend_name() -> str:
    """Name of the active kernel implementation: "compiled" or "numpy"."""
    return BACKEND
