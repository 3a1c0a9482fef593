from .spectrum import *
from .matching import *
from .experiment import *

__all__ = [
    "Cluster",
    "cluster_eigenvalues",
    "diagonalize",
    "unit_modulus_defect",
    "spectrum_csv",
    "read_spectrum_csv",
    "Prediction",
    "Match",
    "MatchReport",
    "match",
    "run_experiment",
    "run_experiments",
    "run_solve",
    "run_build",
    "run_ansatz",
    "expected_multiplicity",
]
