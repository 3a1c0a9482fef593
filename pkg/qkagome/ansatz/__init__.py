from .one_particle import *
from .appendix import *
from .construct import *

__all__ = [
    "OneParticleWave",
    "one_particle_coefficient",
    "one_particle_state",
    "pair_term",
    "eigen_residual",
    "MAX_PARTICLES",
    "Assignment",
    "AnsatzCoefficients",
    "AnsatzClosure",
    "AppendixSystem",
    "build_appendix_system",
    "solve_coefficients",
    "construct_state",
    "exchange_overlap",
]
