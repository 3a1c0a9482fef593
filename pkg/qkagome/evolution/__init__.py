from .relations import *
from .builder import *
from .consistency import *

__all__ = [
    "Op",
    "Relation",
    "LoweringOrder",
    "DEFAULT_ORDER",
    "ALTERNATE_ORDER",
    "relation",
    "apply_word",
    "choose_lowering",
    "EvolutionBlock",
    "EvolutionBuilder",
    "build_evolution",
    "apply_evolution",
    "unitarity_defect",
    "check_path_consistency",
    "relation_residual",
]
