"""Hall algebras of free representations of quivers over F_q[t]/(t^n)."""

from .flags import FlagType, flag_dims, free_grassmannian_count
from .gkm import BorcherdsCartan, cartan_from_quiver, commutation_check, serre_residual
from .hall import HallAlgebra, HallElement, TensorElement, conflation_count
from .laurent import InterpolationError, LaurentPoly, SqrtQ, interpolate_in_q, parse_laurent
from .quiver import PRESETS, FreeRep, FreeReps, Quiver
from .ring import BudgetExceeded, NotInvertible, Ring, get_ring

__all__ = [
    "BorcherdsCartan", "BudgetExceeded", "FlagType", "FreeRep", "FreeReps", "HallAlgebra",
    "HallElement", "InterpolationError", "LaurentPoly", "NotInvertible", "PRESETS", "Quiver",
    "Ring", "SqrtQ", "TensorElement", "cartan_from_quiver", "commutation_check",
    "conflation_count", "flag_dims", "free_grassmannian_count", "get_ring", "interpolate_in_q",
    "parse_laurent", "serre_residual",
]
__version__ = "0.1.0"
