"""Kernel selection.

The compiled extension is used when it imports; setting the environment
variable ``AFFSCHUR_PURE=1`` forces the pure-Python versions (the benchmark
uses this to compare the two).
"""

from __future__ import annotations

import os

from . import _purekernels as pure

BACKEND = "python"
_impl = pure

if os.environ.get("AFFSCHUR_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = pure

poly_add = _impl.poly_add
poly_sub = _impl.poly_sub
poly_mul = _impl.poly_mul
poly_twist = _impl.poly_twist
hecke_rmul_gen = _impl.hecke_rmul_gen

__all__ = ["BACKEND", "poly_add", "poly_sub", "poly_mul", "poly_twist", "hecke_rmul_gen", "pure"]
