"""Hot quadrature kernels with a compiled core and a pure-Python fallback.

The compiled extension is preferred when built; set ``DIFFRACE_KERNELS=py``
to force the numpy fallback (used by the benchmark and cross-checks) or
``DIFFRACE_KERNELS=c`` to fail loudly if the extension is missing.
"""

import os

_choice = os.environ.get("DIFFRACE_KERNELS", "auto").strip().lower()

if _choice in ("auto", "c", "compiled"):
    try:
        from . import _ckernels as _impl

        BACKEND = "compiled"
    except ImportError:
        if _choice != "auto":
            raise
        from . import _pykernels as _impl

        BACKEND = "python"
elif _choice in ("py", "python"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    raise ValueError(f"unrecognized DIFFRACE_KERNELS value {_choice!r}")

profile_value = _impl.profile_value
profile_batch = _impl.profile_batch

__all__ = ["BACKEND", "profile_batch", "profile_value"]
