"""
title : torus.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import Literal, NamedTuple
from dataclasses import dataclass

from qkagome.core import ConfigError, FAMILIES

__all__ = [
    "TorusConfig",
    "Vertex",
    "ModeId",
    "E1",
    "E3",
    "shift",
    "all_vertices",
    "all_modes",
]

E1 = "e1"
E3 = "e3"

Direction = Literal["e1", "e3"]


class Vertex(NamedTuple):
    """A vertex v = k e1 + l e3 of the M×M torus, both coordinates in [0, M)."""

    k: int
    l: int


class ModeId(NamedTuple):
    """One local oscillator: a family in {1, 2, 3} sitting at a vertex."""

    family: int
    vertex: Vertex

    def key(self) -> str:
        return f"{self.family}:{self.vertex.k},{self.vertex.l}"

    @staticmethod
    def parse(key: str) -> ModeId:
        family, coords = key.split(":")
        k, l = coords.split(",")
        return ModeId(int(family), Vertex(int(k), int(l)))


@dataclass(frozen=True)
class TorusConfig:
    """Periodic M×M vertex lattice.

    Parameters
    ----------
    M : int
        The lattice period in both directions

    Raises
    ------
    ConfigError
        If M < 1

    """

    M: int

    def __post_init__(self) -> None:
        if not isinstance(self.M, int) or self.M < 1:
            raise ConfigError(f"Cannot create a torus with M={self.M}<1.")

    def vertex(self, k: int, l: int) -> Vertex:
        return Vertex(k % self.M, l % self.M)

    @property
    def num_vertices(self) -> int:
        return self.M * self.M

    @property
    def num_modes(self) -> int:
        return 3 * self.M * self.M


def shift(v: Vertex, direction: Direction, steps: int, cfg: TorusConfig) -> Vertex:
    """Move v by steps·direction on the torus.

    Parameters
    ----------
    v : Vertex
    direction : Literal['e1', 'e3']
        e1 moves k, e3 moves l
    steps : int
        May be negative or exceed M
    cfg : TorusConfig

    Returns
    -------
    Vertex

    Raises
    ------
    ValueError
        If direction is not one of 'e1', 'e3'

    """

    if direction == E1:
        return cfg.vertex(v.k + steps, v.l)
    if direction == E3:
        return cfg.vertex(v.k, v.l + steps)
    raise ValueError(f"Unknown shift direction={direction}.")


def all_vertices(cfg: TorusConfig) -> list[Vertex]:
    """Vertices sorted by (l, k)."""
    return [Vertex(k, l) for l in range(cfg.M) for k in range(cfg.M)]


def all_modes(cfg: TorusConfig) -> list[ModeId]:
    """The 3·M² modes sorted by (family, l, k), the canonical mode order."""
    return [ModeId(f, v) for f in FAMILIES for v in all_vertices(cfg)]
