"""Exact computations for shifted lattice vertex operator algebras."""

from .lattice import Lattice, direct_sum, named, validate, vec
from .qseries import QSeries, eta_power, theta_coset
from .voashift import GradeValue, ShiftedVOA, TypeRecord, classify, make

__all__ = [
    "Lattice", "direct_sum", "named", "validate", "vec",
    "QSeries", "eta_power", "theta_coset",
    "GradeValue", "ShiftedVOA", "TypeRecord", "classify", "make",
]
