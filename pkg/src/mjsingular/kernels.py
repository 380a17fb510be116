"""Kernel dispatch: the compiled extension when it is importable, else the
pure-Python fallback.  Set ``MJ_SINGULAR_PURE_PYTHON=1`` to force the
fallback."""

import os

if os.environ.get("MJ_SINGULAR_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "python"

order_key = _impl.order_key
leading_monomial = _impl.leading_monomial
mul_terms = _impl.mul_terms
add_scaled = _impl.add_scaled
divides = _impl.divides
normal_form = _impl.normal_form

__all__ = ["BACKEND", "order_key", "leading_monomial", "mul_terms",
           "add_scaled", "divides", "normal_form"]
