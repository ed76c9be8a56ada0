"""Dillon-type monomial vectorial bent functions over binary fields."""

from .gf2field import Field, FieldError, build_field
from .kloosterman import KloostermanTable, build_table, kloosterman_sum
from .bent import BooleanMap, DillonMonomial, is_bent, search_bent_dillon

__all__ = [
    "Field", "FieldError", "build_field",
    "KloostermanTable", "build_table", "kloosterman_sum",
    "BooleanMap", "DillonMonomial", "is_bent", "search_bent_dillon",
]
__version__ = "0.1.0"
