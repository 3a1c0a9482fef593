"""
title : relations.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from typing import Literal, NamedTuple
from dataclasses import dataclass

from qkagome.lattice import TorusConfig, Vertex, ModeId, E1, E3, shift
from qkagome.qfock import (
    ModelParams,
    Occupation,
    SectorCharge,
    StateVec,
    apply_raise,
    apply_lower,
    apply_k,
)

__all__ = [
    "Op",
    "Relation",
    "LoweringOrder",
    "DEFAULT_ORDER",
    "ALTERNATE_ORDER",
    "relation",
    "apply_word",
    "choose_lowering",
]


class Op(NamedTuple):
    """One local generator: kind is 'raise', 'lower', 'k' or 'kp' (k')."""

    kind: Literal["raise", "lower", "k", "kp"]
    mode: ModeId


Word = tuple[Op, ...]


@dataclass(frozen=True)
class Relation:
    """One adjoint relation U·lhs·U^-1 = Σ rhs, anchored at a vertex.

    Parameters
    ----------
    family : int
        The family whose creation operator appears on the left
    vertex : Vertex
    lhs : Word
    rhs : tuple[Word, ...]
    step : SectorCharge
        The charge added by lhs (and by every rhs word)

    """

    family: int
    vertex: Vertex
    lhs: Word
    rhs: tuple[Word, ...]
    step: SectorCharge


@dataclass(frozen=True)
class LoweringOrder:
    """Which quantum the construction peels off first.

    Parameters
    ----------
    families : tuple[int, ...]
        Families in order of preference
    reverse : bool = False
        Take the largest occupied vertex instead of the smallest

    """

    families: tuple[int, ...] = (1, 3, 2)
    reverse: bool = False


DEFAULT_ORDER = LoweringOrder((1, 3, 2), reverse=False)
ALTERNATE_ORDER = LoweringOrder((3, 2, 1), reverse=True)


def relation(family: int, w: Vertex, cfg: TorusConfig) -> Relation:
    """The defining relation whose left side creates a family quantum at w.

    Parameters
    ----------
    family : int
        1, 2 or 3
    w : Vertex
    cfg : TorusConfig

    Returns
    -------
    Relation

    Raises
    ------
    ValueError
        If family is not 1, 2 or 3

    """

    we1 = shift(w, E1, 1, cfg)
    we3 = shift(w, E3, 1, cfg)
    a1, a2, a3 = ModeId(1, w), ModeId(2, w), ModeId(3, w)
    b1, b3 = ModeId(1, we1), ModeId(3, we3)

    if family == 1:
        lhs = (Op("k", a2), Op("raise", a1))
        rhs = (
            (Op("k", b3), Op("raise", b1)),
            (Op("k", b1), Op("raise", a2), Op("lower", b3)),
        )
        return Relation(1, w, lhs, rhs, SectorCharge(1, 0))
    if family == 2:
        lhs = (Op("raise", a2),)
        rhs = (
            (Op("raise", b1), Op("raise", b3)),
            (Op("k", b1), Op("kp", b3), Op("raise", a2)),
        )
        return Relation(2, w, lhs, rhs, SectorCharge(1, 1))
    if family == 3:
        lhs = (Op("kp", a2), Op("raise", a3))
        rhs = (
            (Op("kp", b1), Op("raise", b3)),
            (Op("kp", b3), Op("raise", a2), Op("lower", b1)),
        )
        return Relation(3, w, lhs, rhs, SectorCharge(0, 1))
    raise ValueError(f"Unknown oscillator family={family}.")


def apply_word(word: Word, state: StateVec, params: ModelParams) -> StateVec:
    """Apply an operator product to state, rightmost factor first."""

    for op in reversed(word):
        if op.kind == "raise":
            state = apply_raise(op.mode, state, params)
        elif op.kind == "lower":
            state = apply_lower(op.mode, state, params)
        elif op.kind == "k":
            state = apply_k(op.mode, state, False, params)
        else:
            state = apply_k(op.mode, state, True, params)
    return state


def choose_lowering(occ: Occupation, order: LoweringOrder) -> tuple[int, Vertex] | None:
    """Pick the (family, vertex) whose quantum is removed from occ.

    Returns None for the vacuum.
    """

    for family in order.families:
        occupied = [m.vertex for m in occ.modes() if m.family == family]
        if occupied:
            pick = max if order.reverse else min
            return family, pick(occupied)
    return None
