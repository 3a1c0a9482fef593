"""
title : sector.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import NamedTuple
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
import logging

from qkagome.core import SECTOR_CAP, SectorTooLarge
from qkagome.lattice import TorusConfig, ModeId, all_modes, all_vertices

from .state import Occupation

__all__ = [
    "SectorCharge",
    "SectorBasis",
    "charges",
    "sector_dimension",
    "enumerate_sector",
]

logger = logging.getLogger(__name__)


class SectorCharge(NamedTuple):
    """Conserved charges Q1 = Σ(n1 + n2), Q3 = Σ(n3 + n2)."""

    Q1: int
    Q3: int

    def __str__(self) -> str:
        return f"({self.Q1},{self.Q3})"


@dataclass(frozen=True)
class SectorBasis:
    """Canonically ordered occupation basis of one charge sector.

    Parameters
    ----------
    charge : SectorCharge
    states : tuple[Occupation, ...]
        Lexicographic order of the dense occupation vectors over all modes
        sorted by (family, l, k)
    index : dict[Occupation, int]
        Position of every state in states

    """

    charge: SectorCharge
    states: tuple[Occupation, ...]
    index: dict[Occupation, int] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.states)

    def __contains__(self, occ: Occupation) -> bool:
        return occ in self.index

    def __getitem__(self, i: int) -> Occupation:
        return self.states[i]


def charges(occ: Occupation) -> SectorCharge:
    n1, n2, n3 = occ.total(1), occ.total(2), occ.total(3)
    return SectorCharge(n1 + n2, n3 + n2)


def _multisets(n_slots: int, size: int) -> int:
    return comb(n_slots + size - 1, size)


def sector_dimension(cfg: TorusConfig, charge: SectorCharge) -> int:
    """Closed-form size of a sector, stratified by the family-2 total s.

    Parameters
    ----------
    cfg : TorusConfig
    charge : SectorCharge

    Returns
    -------
    int

    """

    V = cfg.num_vertices
    Q1, Q3 = charge
    if Q1 < 0 or Q3 < 0:
        return 0
    return sum(
        _multisets(V, s) * _multisets(V, Q1 - s) * _multisets(V, Q3 - s)
        for s in range(min(Q1, Q3) + 1)
    )


def enumerate_sector(
    cfg: TorusConfig, charge: SectorCharge, cap: int = SECTOR_CAP
) -> SectorBasis:
    """Enumerate all occupations carrying the given charges.

    Parameters
    ----------
    cfg : TorusConfig
    charge : SectorCharge
    cap : int = SECTOR_CAP
        Sectors larger than cap are refused

    Returns
    -------
    SectorBasis

    Raises
    ------
    ValueError
        If a charge is negative
    SectorTooLarge
        If the sector dimension exceeds cap

    Complexity
    ----------
    Space : O(d)
    Time : O(d log d), d the sector dimension

    """

    charge = SectorCharge(*charge)
    if charge.Q1 < 0 or charge.Q3 < 0:
        raise ValueError(f"Cannot enumerate a sector with negative charge {charge}.")

    dim = sector_dimension(cfg, charge)
    if dim > cap:
        raise SectorTooLarge(dim, cap)

    vertices = all_vertices(cfg)
    order = {mode: i for i, mode in enumerate(all_modes(cfg))}

    def placements(family: int, size: int) -> list[Counter]:
        return [
            Counter(ModeId(family, v) for v in chosen)
            for chosen in combinations_with_replacement(vertices, size)
        ]

    states = []
    for s in range(min(charge) + 1):
        for twos in placements(2, s):
            for ones in placements(1, charge.Q1 - s):
                for threes in placements(3, charge.Q3 - s):
                    states.append(Occupation.of(ones + twos + threes))

    def dense(occ: Occupation) -> tuple[int, ...]:
        vec = [0] * len(order)
        for mode, n in occ.counts:
            vec[order[mode]] = n
        return tuple(vec)

    states.sort(key=dense)
    logger.debug("Enumerated sector %s with %d states (M=%d).", charge, dim, cfg.M)

    return SectorBasis(charge, tuple(states), {occ: i for i, occ in enumerate(states)})
