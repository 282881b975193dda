"""Exact computations with extended affine Weyl groups, their Hecke algebras
and the associated q-Schur algebras."""

from .kernels import BACKEND
from .laurent import LaurentPoly
from .rootdatum import CartanDatum, build_root_datum
from .weyl import BoundError, WeylUniverse, orbit_table

__version__ = "0.1.0"

__all__ = ["BACKEND", "LaurentPoly", "CartanDatum", "build_root_datum", "BoundError", "WeylUniverse", "orbit_table"]
