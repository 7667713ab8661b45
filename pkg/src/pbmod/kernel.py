"""Picks the compiled kernel when available, else the pure-Python one.

Set PBMOD_PURE_PYTHON=1 to force the fallback.
"""

import os

from pbmod import _pykernel

if os.environ.get("PBMOD_PURE_PYTHON"):
    _impl = _pykernel
else:
    try:
        from pbmod import _kernel as _impl
    except ImportError:
        _impl = _pykernel

Kernel = _impl.Kernel
PyKernel = _pykernel.Kernel
BACKEND = "compiled" if _impl is not _pykernel else "python"
SAT, UNSAT, LIMIT = _pykernel.SAT, _pykernel.UNSAT, _pykernel.LIMIT
