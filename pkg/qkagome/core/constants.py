"""
title : constants.py
create : @tarickali 23/12/26
update : @tarickali 26/10/17
"""

__all__ = [
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
]

# amplitudes
PRUNE_TOL = 1e-14

# acceptance tolerances
UNITARITY_TOL = 1e-10
RESIDUAL_TOL = 1e-8
MATCH_TOL = 1e-7

# root finding
DEDUP_RADIUS = 1e-6
NEWTON_TOL = 1e-10
NEWTON_STEP = 1e-7
NEWTON_MAX_ITER = 100
MULTISTART = 128

# spectrum
CLUSTER_RADIUS = 1e-7

# resources
SECTOR_CAP = 50_000

SEED = 42
SEED_ENV = "KB_SEED"

# the three oscillator families hosted by every vertex
FAMILIES = (1, 2, 3)
