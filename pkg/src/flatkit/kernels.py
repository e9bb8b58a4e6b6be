"""Backend dispatch for the hot kernels.

The fast path is numba-jitted; a pure-numpy fallback produces identical
results.  Selection is controlled by the ``FLATKIT_BACKEND`` environment
variable:

    FLATKIT_BACKEND=numba   require numba (ImportError if missing)
    FLATKIT_BACKEND=numpy   force the pure-numpy fallback
    unset or "auto"         numba when importable, else numpy

`use_backend` swaps the implementation at runtime (used by tests and the
benchmark script).
"""

from __future__ import annotations

import os

from . import kernels_numpy
from .kernels_numpy import popcounts  # noqa: F401  (re-export)

_IMPLS = {"numpy": kernels_numpy}


def _load_numba():
    if "numba" not in _IMPLS:
        from . import kernels_numba

        _IMPLS["numba"] = kernels_numba
    return _IMPLS["numba"]


def _select_initial():
    choice = os.environ.get("FLATKIT_BACKEND", "auto").strip().lower()
    if choice in ("", "auto"):
        try:
            return _load_numba()
        except ImportError:
            return kernels_numpy
    if choice == "numba":
        return _load_numba()
    if choice == "numpy":
        return kernels_numpy
    raise ValueError(f"FLATKIT_BACKEND must be 'numba', 'numpy', or 'auto', got {choice!r}")


_impl = _select_initial()


def backend_name() -> str:
    return "numba" if _impl is _IMPLS.get("numba") else "numpy"


def use_backend(name: str) -> str:
    """Switch the active backend ('numba' or 'numpy'); returns the previous one."""
    global _impl
    prev = backend_name()
    if name == "numba":
        _impl = _load_numba()
    elif name == "numpy":
        _impl = kernels_numpy
    else:
        raise ValueError(f"unknown backend {name!r}")
    return prev


def validate_table(table, n):
    return _impl.validate_table(table, n)


def closure_table(table, n):
    return _impl.closure_table(table, n)


def gf_rank_table(cols, q, add, mul, neg, inv):
    return _impl.gf_rank_table(cols, q, add, mul, neg, inv)


def restrict_table(table, elems):
    return _impl.restrict_table(table, elems)


def min_perm_table(table, n):
    return _impl.min_perm_table(table, n)
