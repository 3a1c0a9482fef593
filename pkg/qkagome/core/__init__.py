from .types import *
from .constants import *
from .errors import *

__all__ = [
    "Number",
    "Complex",
    "Coords",
    "PRUNE_TOL",
    "UNITARITY_TOL",
    "RESIDUAL_TOL",
    "MATCH_TOL",
    "DEDUP_RADIUS",
    "CLUSTER_RADIUS",
    "NEWTON_TOL",
    "NEWTON_STEP",
    "NEWTON_MAX_ITER",
    "MULTISTART",
    "SECTOR_CAP",
    "SEED",
    "SEED_ENV",
    "FAMILIES",
    "KagomeError",
    "ConfigError",
    "SectorTooLarge",
    "DegenerateSchedule",
    "SingularKernel",
    "SupportError",
    "ConstructionError",
    "StageError",
]
