from .params import *
from .state import *
from .operators import *
from .sector import *

__all__ = [
    "ModelParams",
    "Occupation",
    "StateVec",
    "inner",
    "mode_order",
    "apply_raise",
    "apply_lower",
    "apply_k",
    "raise_factor",
    "k_eigenvalue",
    "occupation",
    "SectorCharge",
    "SectorBasis",
    "charges",
    "sector_dimension",
    "enumerate_sector",
]
