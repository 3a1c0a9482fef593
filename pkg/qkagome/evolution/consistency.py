"""
title : consistency.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

import logging

import numpy as np

from qkagome.core import SEED, SECTOR_CAP
from qkagome.lattice import TorusConfig, all_vertices
from qkagome.qfock import ModelParams, SectorCharge, StateVec

from .builder import EvolutionBuilder, apply_evolution
from .relations import ALTERNATE_ORDER, apply_word, relation

__all__ = ["check_path_consistency", "relation_residual"]

logger = logging.getLogger(__name__)


def check_path_consistency(
    cfg: TorusConfig,
    params: ModelParams,
    charge: SectorCharge,
    trials: int = 100,
    seed: int = SEED,
    cap: int = SECTOR_CAP,
) -> float:
    """Rebuild random columns of a block with the alternate lowering order.

    Parameters
    ----------
    cfg : TorusConfig
    params : ModelParams
    charge : SectorCharge
    trials : int = 100
        Number of columns compared; every column when the sector is smaller
    seed : int = SEED
    cap : int = SECTOR_CAP

    Returns
    -------
    float
        The largest entrywise difference between the two constructions

    """

    builder = EvolutionBuilder(cfg, params, cap)
    block = builder.block(SectorCharge(*charge))
    rng = np.random.default_rng(seed)

    if block.dim <= trials:
        columns = np.arange(block.dim)
    else:
        columns = rng.choice(block.dim, size=trials, replace=False)

    deviation = 0.0
    for i in columns:
        alt = builder.column(block.basis.states[i], ALTERNATE_ORDER)
        deviation = max(deviation, float(np.max(np.abs(alt - block.matrix[:, i]))))

    logger.info(
        "Path consistency in sector %s: %.3e over %d columns.",
        block.charge,
        deviation,
        len(columns),
    )
    return deviation


def relation_residual(
    cfg: TorusConfig,
    params: ModelParams,
    charge: SectorCharge,
    family: int,
    trials: int = 10,
    seed: int = SEED,
    cap: int = SECTOR_CAP,
) -> float:
    """Check U·lhs·ψ = rhs·U·ψ for random ψ in a sector.

    The relation of the given family is anchored at a random vertex for
    every trial; lhs·ψ lives in the sector above charge.

    Returns
    -------
    float
        max ‖U(lhs ψ) - rhs(U ψ)‖ over the trials, ψ of unit norm

    """

    charge = SectorCharge(*charge)
    builder = EvolutionBuilder(cfg, params, cap)
    rng = np.random.default_rng(seed)
    vertices = all_vertices(cfg)

    step = relation(family, vertices[0], cfg).step
    upper = builder.block(SectorCharge(charge.Q1 + step.Q1, charge.Q3 + step.Q3))
    lower = builder.block(charge)

    worst = 0.0
    for _ in range(trials):
        rel = relation(family, vertices[rng.integers(len(vertices))], cfg)
        vec = rng.normal(size=lower.dim) + 1j * rng.normal(size=lower.dim)
        psi = StateVec.from_vector(vec / np.linalg.norm(vec), lower.basis)

        left = apply_evolution(upper, apply_word(rel.lhs, psi, params))
        u_psi = apply_evolution(lower, psi)
        right = StateVec.zero()
        for word in rel.rhs:
            right = right + apply_word(word, u_psi, params)
        worst = max(worst, (left - right).norm())

    return worst
