"""
title : builder.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import Any
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import logging

import numpy as np
import scipy.sparse as sp

from qkagome.core import SECTOR_CAP, ConstructionError, SectorTooLarge
from qkagome.lattice import TorusConfig, Vertex
from qkagome.qfock import (
    ModelParams,
    Occupation,
    SectorBasis,
    SectorCharge,
    StateVec,
    enumerate_sector,
    sector_dimension,
)

from .relations import (
    DEFAULT_ORDER,
    LoweringOrder,
    Relation,
    apply_word,
    choose_lowering,
    relation,
)

__all__ = [
    "EvolutionBlock",
    "EvolutionBuilder",
    "build_evolution",
    "apply_evolution",
    "unitarity_defect",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EvolutionBlock:
    """The evolution operator restricted to one charge sector.

    Parameters
    ----------
    charge : SectorCharge
    basis : SectorBasis
    matrix : np.ndarray
        Column i is U applied to basis state i, in the same basis

    """

    charge: SectorCharge
    basis: SectorBasis
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict[str, Any]:
        return {
            "charge": [self.charge.Q1, self.charge.Q3],
            "dim": self.dim,
            "basis": [occ.to_json() for occ in self.basis.states],
            "matrix": [[[z.real, z.imag] for z in row] for row in self.matrix],
        }


class EvolutionBuilder:
    """Builds and memoises evolution blocks sector by sector.

    Columns are obtained by peeling one quantum off a basis state with the
    adjoint relations, so a sector needs the blocks of the sectors with one
    charge unit less. Sectors are built level by level in Q1 + Q3; a level
    only starts once every block of the previous level is stored.

    Parameters
    ----------
    cfg : TorusConfig
    params : ModelParams
    cap : int = SECTOR_CAP
        Largest admissible sector dimension
    order : LoweringOrder = DEFAULT_ORDER
    jobs : int = 1
        Number of sectors of one level built concurrently

    """

    def __init__(
        self,
        cfg: TorusConfig,
        params: ModelParams,
        cap: int = SECTOR_CAP,
        order: LoweringOrder = DEFAULT_ORDER,
        jobs: int = 1,
    ) -> None:
        self.cfg = cfg
        self.params = params
        self.cap = cap
        self.order = order
        self.jobs = max(1, jobs)

        self.blocks: dict[SectorCharge, EvolutionBlock] = {}
        self.bases: dict[SectorCharge, SectorBasis] = {}
        self.transfers: dict[tuple[SectorCharge, int, Vertex], sp.csr_matrix] = {}

    def block(self, charge: SectorCharge) -> EvolutionBlock:
        """Return the block of charge, building every lower sector first.

        Raises
        ------
        SectorTooLarge
            If charge or one of its lower sectors exceeds the cap

        """

        charge = SectorCharge(*charge)
        if charge in self.blocks:
            return self.blocks[charge]

        dim = sector_dimension(self.cfg, charge)
        if dim > self.cap:
            raise SectorTooLarge(dim, self.cap)

        levels: dict[int, list[SectorCharge]] = {}
        for a in range(charge.Q1 + 1):
            for b in range(charge.Q3 + 1):
                c = SectorCharge(a, b)
                if c not in self.blocks:
                    levels.setdefault(a + b, []).append(c)

        for level in sorted(levels):
            pending = levels[level]
            if self.jobs > 1 and len(pending) > 1:
                with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                    built = list(pool.map(self._build_sector, pending))
            else:
                built = [self._build_sector(c) for c in pending]
            for blk in built:
                self.blocks[blk.charge] = blk

        return self.blocks[charge]

    def transfer(self, charge: SectorCharge, rel: Relation) -> sp.csr_matrix:
        """Matrix of the right side of rel from the lower sector into charge."""

        key = (charge, rel.family, rel.vertex)
        if key in self.transfers:
            return self.transfers[key]

        lower = self.blocks[_lower(charge, rel)].basis
        target = self.basis(charge)
        rows, cols, data = [], [], []
        for j, occ in enumerate(lower.states):
            image = StateVec.zero()
            for word in rel.rhs:
                image = image + apply_word(word, StateVec.basis(occ), self.params)
            for out, amp in image.items():
                i = target.index.get(out)
                if i is None:
                    raise ConstructionError(
                        f"Relation {rel.family} at {rel.vertex} maps {occ} outside "
                        f"sector {charge}."
                    )
                rows.append(i)
                cols.append(j)
                data.append(amp)

        T = sp.csr_matrix(
            (np.asarray(data, dtype=complex), (rows, cols)),
            shape=(len(target), len(lower)),
        )
        self.transfers[key] = T
        return T

    def basis(self, charge: SectorCharge) -> SectorBasis:
        if charge not in self.bases:
            self.bases[charge] = enumerate_sector(self.cfg, charge, self.cap)
        return self.bases[charge]

    def column(self, occ: Occupation, order: LoweringOrder | None = None) -> np.ndarray:
        """U|occ> in the basis of its sector, peeled with the given order.

        Every lower sector must already be built.
        """

        order = order or self.order
        choice = choose_lowering(occ, order)
        charge = _charge_of(occ)
        if choice is None:
            return np.ones(1, dtype=complex)

        rel = relation(*choice, self.cfg)
        psi, c = _peel(occ, rel, self.params)
        lower = self.blocks[_lower(charge, rel)]
        T = self.transfer(charge, rel)
        return T @ lower.matrix[:, lower.basis.index[psi]] / c

    def _build_sector(self, charge: SectorCharge) -> EvolutionBlock:
        basis = self.basis(charge)
        dim = len(basis)
        logger.info("Building evolution block %s (dim=%d, M=%d).", charge, dim, self.cfg.M)

        if charge == (0, 0):
            return EvolutionBlock(charge, basis, np.ones((1, 1), dtype=complex))

        groups: dict[tuple[int, Vertex], list[int]] = {}
        for i, occ in enumerate(basis.states):
            groups.setdefault(choose_lowering(occ, self.order), []).append(i)

        matrix = np.zeros((dim, dim), dtype=complex)
        for (family, w), members in groups.items():
            rel = relation(family, w, self.cfg)
            lower = self.blocks[_lower(charge, rel)]
            T = self.transfer(charge, rel)

            idx, scale = [], []
            for i in members:
                psi, c = _peel(basis.states[i], rel, self.params)
                idx.append(lower.basis.index[psi])
                scale.append(c)
            matrix[:, members] = (T @ lower.matrix[:, idx]) / np.asarray(scale)

        if not np.all(np.isfinite(matrix)):
            raise ConstructionError(f"Non-finite amplitudes in evolution block {charge}.")

        return EvolutionBlock(charge, basis, matrix)


def _charge_of(occ: Occupation) -> SectorCharge:
    n1, n2, n3 = occ.total(1), occ.total(2), occ.total(3)
    return SectorCharge(n1 + n2, n3 + n2)


def _lower(charge: SectorCharge, rel: Relation) -> SectorCharge:
    return SectorCharge(charge.Q1 - rel.step.Q1, charge.Q3 - rel.step.Q3)


def _peel(occ: Occupation, rel: Relation, params: ModelParams) -> tuple[Occupation, complex]:
    """Write occ = (1/c)·lhs|psi> and return (psi, c)."""

    mode = rel.lhs[-1].mode
    psi = occ.with_count(mode, occ.get(mode) - 1)
    c = apply_word(rel.lhs, StateVec.basis(psi), params).get(occ)
    if c == 0:
        raise ConstructionError(f"Vanishing peel factor for {occ}.")
    return psi, c


def build_evolution(
    cfg: TorusConfig,
    params: ModelParams,
    charge: SectorCharge,
    cap: int = SECTOR_CAP,
    order: LoweringOrder = DEFAULT_ORDER,
    jobs: int = 1,
) -> EvolutionBlock:
    """Construct U restricted to the sector of the given charge.

    Parameters
    ----------
    cfg : TorusConfig
    params : ModelParams
    charge : SectorCharge
    cap : int = SECTOR_CAP
    order : LoweringOrder = DEFAULT_ORDER
    jobs : int = 1

    Returns
    -------
    EvolutionBlock

    Raises
    ------
    SectorTooLarge
        If a required sector exceeds cap
    ConstructionError
        If the construction produces non-finite amplitudes

    """

    return EvolutionBuilder(cfg, params, cap, order, jobs).block(SectorCharge(*charge))


def apply_evolution(block: EvolutionBlock, state: StateVec) -> StateVec:
    """Matrix-vector product of block with a state of its sector.

    Raises
    ------
    SupportError
        If state has amplitude outside the block's sector

    """

    vec = state.to_vector(block.basis)
    return StateVec.from_vector(block.matrix @ vec, block.basis).pruned()


def unitarity_defect(block: EvolutionBlock) -> float:
    """max |U^† U - I| over the block."""
    U = block.matrix
    return float(np.max(np.abs(U.conj().T @ U - np.eye(block.dim))))
