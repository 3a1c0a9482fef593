from .variables import *
from .families import *
from .solver import *

__all__ = [
    "SpectralParams",
    "lift",
    "inverse_lift",
    "kernel_S",
    "kernel_S_u",
    "kernel_matrix",
    "elementary_F",
    "elementary_F_all",
    "branch_free",
    "branch_xxz",
    "dual_map",
    "Laurent",
    "PolyFamily",
    "family",
    "gaussian_binomial",
    "generating_function",
    "q_limit_check",
    "Solution",
    "SolutionSet",
    "newton",
    "jacobian",
    "solve_one_particle",
    "solve_system",
    "branch_tag",
]
