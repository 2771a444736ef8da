"""Flag-transitive 2-designs with lambda = 2, built and checked in exact arithmetic."""

from .design import DesignError, DesignParams, IncidenceStructure, is_flag_transitive, verify_2design
from .permgroup import BudgetExceeded, Permutation, PermGroup

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "DesignError",
    "DesignParams",
    "IncidenceStructure",
    "PermGroup",
    "Permutation",
    "is_flag_transitive",
    "verify_2design",
]
