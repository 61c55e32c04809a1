"""Grid kernels: compiled extension when available, numpy fallback otherwise.

Set ``SPHEREVOL_PURE_PYTHON=1`` to force the fallback (used by the
benchmark and the parity tests).  ``BACKEND`` reports which one is live.
"""

import os

BACKEND = "python"

if os.environ.get("SPHEREVOL_PURE_PYTHON", "").lower() in ("1", "true", "yes"):
    from .fallback import discrete_volume_and_grad
else:
    try:
        from ._core import discrete_volume_and_grad

        BACKEND = "compiled"
    except ImportError:
        from .fallback import discrete_volume_and_grad

__all__ = ["discrete_volume_and_grad", "BACKEND"]
