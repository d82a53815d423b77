"""Hot numeric kernels: compiled core with a pure-numpy fallback.

The compiled extension is preferred when importable; set the environment
variable ``VARLP_PURE_PYTHON=1`` to force the fallback.  ``BACKEND`` reports
which implementation is active.
"""

import os

from . import _fallback

BACKEND = "python"
pow_sum = _fallback.pow_sum
pow_sum_weighted = _fallback.pow_sum_weighted
hilbert_direct = _fallback.hilbert_direct
step_hilbert = _fallback.step_hilbert

if not os.environ.get("VARLP_PURE_PYTHON"):
    try:
        from . import _core
    except ImportError:
        _core = None
    if _core is not None:
        BACKEND = "compiled"
        pow_sum = _core.pow_sum
        pow_sum_weighted = _core.pow_sum_weighted
        hilbert_direct = _core.hilbert_direct
        step_hilbert = _core.step_hilbert

__all__ = [
    "BACKEND",
    "pow_sum",
    "pow_sum_weighted",
    "hilbert_direct",
    "step_hilbert",
]
