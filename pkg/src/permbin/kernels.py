"""Kernel backend selection.

The compiled extension is preferred; set ``PERMBIN_PURE=1`` to force the
numpy fallback (the benchmark and the backend-equivalence tests do).
"""

import os

from . import _purekernels

BACKEND = "python"
_impl = _purekernels

if os.environ.get("PERMBIN_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _purekernels

binomial_is_perm = _impl.binomial_is_perm
sparse_values = _impl.sparse_values
hermite_scan = _impl.hermite_scan


def backends():
    """Available kernel modules keyed by name."""
    out = {"python": _purekernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
