"""Kernel dispatch: prefer the compiled extension, fall back to numpy.

Set PARAMINE_PURE_PYTHON=1 to force the fallback (used by the benchmark
and by tests that compare the two implementations).
"""

from __future__ import annotations

import os

if os.environ.get("PARAMINE_PURE_PYTHON"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        from . import _pykernels as _impl  # type: ignore[no-redef]

        BACKEND = "python"

sparse_dot = _impl.sparse_dot
batch_dot = _impl.batch_dot
common_sum = _impl.common_sum
