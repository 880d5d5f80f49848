"""Factorization kernels with a compiled core and a pure-Python fallback.

The Cython extension (`_core`) is preferred when it has been built; the
NumPy implementation (`fallback`) has identical semantics and is selected
automatically when the extension is missing, or forcibly via the
EIGROOTS_PURE_PYTHON=1 environment variable.

Exposed callables (same signatures in both backends):

    qr_inplace(r, b, pivoting, want_q) -> (perm, q or None)
    solve_upper_inplace(u, x) -> None

Each backend is deterministic for a fixed input. Across backends, results
agree to rounding, but when two column norms tie to within a few ulps the
pivot choice (and hence the selected basis) can differ; both outcomes
satisfy the same contracts.
"""

import os

from . import fallback

try:
    from . import _core  # type: ignore[attr-defined]
except ImportError:
    _core = None

if _core is None or os.environ.get("EIGROOTS_PURE_PYTHON"):
    _impl = fallback
else:
    _impl = _core

BACKEND_NAME = _impl.BACKEND_NAME
qr_inplace = _impl.qr_inplace
solve_upper_inplace = _impl.solve_upper_inplace


def available_backends():
    """Name -> module for every importable backend (for tests/benchmarks)."""
    backends = {"python": fallback}
    if _core is not None:
        backends["compiled"] = _core
    return backends
