"""
title : geometry.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import Any, Iterable
from dataclasses import dataclass, field, replace
from enum import Enum
import re

from qkagome.core import Coords, ConfigError, DegenerateSchedule

from .torus import TorusConfig, Vertex

__all__ = [
    "GeometryClass",
    "Classification",
    "Geometry",
    "DeltaSchedule",
    "classify_geometry",
    "delta_schedule",
    "cyclic_reanchor",
    "translate_positions",
    "parse_geometry",
]

HORIZONTAL = "H"
VERTICAL = "V"


class GeometryClass(Enum):
    COINCIDENT = "coincident"
    LINE = "line"
    GRID = "grid"
    GENERIC = "generic"


@dataclass(frozen=True)
class Classification:
    """The geometry class of a particle configuration.

    Parameters
    ----------
    kind : GeometryClass
    K : int | None
        Number of distinct columns, GRID only
    L : int | None
        Number of distinct rows, GRID only, always L <= K

    """

    kind: GeometryClass
    K: int | None = None
    L: int | None = None

    def __str__(self) -> str:
        if self.kind is GeometryClass.GRID:
            return f"grid:{self.K}x{self.L}"
        return self.kind.value

    @staticmethod
    def grid(K: int, L: int) -> Classification:
        K, L = max(K, L), min(K, L)
        return Classification(GeometryClass.GRID, K, L)


@dataclass(frozen=True)
class Geometry:
    """Positions v_1..v_N of the particles together with their class.

    The chart holds integer coordinates that agree with the positions mod M
    but may be lifted by +M, as produced by cyclic_reanchor. The base is the
    index of the position playing the role of the bottom-left point.

    """

    positions: tuple[Vertex, ...]
    classification: Classification
    chart: tuple[Coords, ...] = field(default=None)
    base: int = 0

    def __post_init__(self) -> None:
        if self.chart is None:
            object.__setattr__(
                self, "chart", tuple((v.k, v.l) for v in self.positions)
            )

    @property
    def N(self) -> int:
        return len(self.positions)

    def to_json(self) -> list[list[int]]:
        return [[v.k, v.l] for v in self.positions]


@dataclass(frozen=True)
class DeltaSchedule:
    """Ordered break points of a coefficient chain anchored at one position.

    Parameters
    ----------
    base : int
        Index of the anchoring position in the geometry
    vertex : Vertex
        The anchoring vertex
    deltas : tuple[int, ...]
        Strictly increasing differences n_k - n_1 and m_l - m_1
    tags : tuple[str, ...]
        'H' for a horizontal difference, 'V' for a vertical one
    slots : tuple[int, ...]
        Index of the position whose spectral parameter belongs to each delta

    """

    base: int
    vertex: Vertex
    deltas: tuple[int, ...]
    tags: tuple[str, ...]
    slots: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.deltas)

    def segment(self, delta: int) -> int:
        """Index of the chain segment containing the shift delta in 1..M."""
        return sum(1 for d in self.deltas if d < delta)


def classify_geometry(positions: Iterable[Vertex | Coords], cfg: TorusConfig) -> Geometry:
    """Classify a particle configuration.

    Parameters
    ----------
    positions : Iterable[Vertex | tuple[int, int]]
        Particle positions, repeats allowed
    cfg : TorusConfig

    Returns
    -------
    Geometry

    Raises
    ------
    ValueError
        If positions is empty

    """

    points = tuple(cfg.vertex(*p) for p in positions)
    if len(points) == 0:
        raise ValueError("Cannot classify an empty list of positions.")

    distinct = set(points)
    ks = {p.k for p in points}
    ls = {p.l for p in points}

    if len(distinct) == 1:
        kind = Classification(GeometryClass.COINCIDENT)
    elif len(distinct) == len(points) and (len(ks) == 1 or len(ls) == 1):
        kind = Classification(GeometryClass.LINE)
    elif (
        len(distinct) == len(points)
        and len(ks) >= 2
        and len(ls) >= 2
        and distinct == {Vertex(k, l) for k in ks for l in ls}
    ):
        kind = Classification.grid(len(ks), len(ls))
    else:
        kind = Classification(GeometryClass.GENERIC)

    base = min(range(len(points)), key=lambda i: (points[i].k, points[i].l))
    return Geometry(points, kind, base=base)


def delta_schedule(geom: Geometry, cfg: TorusConfig) -> DeltaSchedule:
    """Merge the horizontal and vertical differences seen from the base.

    Parameters
    ----------
    geom : Geometry
        A LINE, GRID or COINCIDENT geometry; the base is geom.base
    cfg : TorusConfig

    Returns
    -------
    DeltaSchedule

    Raises
    ------
    ValueError
        If the geometry is GENERIC
    DegenerateSchedule
        If a horizontal and a vertical difference are equal

    """

    if geom.classification.kind is GeometryClass.GENERIC:
        raise ValueError("Cannot build a delta schedule for a generic geometry.")

    n1, m1 = geom.chart[geom.base]
    index = {}
    for i, c in enumerate(geom.chart):
        index.setdefault(c, i)

    entries: list[tuple[int, str, int]] = []
    for n in sorted({c[0] for c in geom.chart}):
        if n != n1:
            entries.append((n - n1, HORIZONTAL, index[(n, m1)]))
    for m in sorted({c[1] for c in geom.chart}):
        if m != m1:
            entries.append((m - m1, VERTICAL, index[(n1, m)]))
    entries.sort(key=lambda e: e[0])

    deltas = tuple(e[0] for e in entries)
    if len(set(deltas)) != len(deltas):
        raise DegenerateSchedule(
            f"Degenerate schedule: differences {list(deltas)} seen from "
            f"{geom.positions[geom.base]} are not strictly increasing."
        )
    if any(d < 1 or d >= cfg.M for d in deltas):
        raise ValueError(f"Differences {list(deltas)} do not fit the torus M={cfg.M}.")

    return DeltaSchedule(
        base=geom.base,
        vertex=geom.positions[geom.base],
        deltas=deltas,
        tags=tuple(e[1] for e in entries),
        slots=tuple(e[2] for e in entries),
    )


def cyclic_reanchor(geom: Geometry, cfg: TorusConfig, new_base_index: int) -> Geometry:
    """Relabel the chart so that the chosen position becomes the base.

    Coordinates below the new base are lifted by +M, so the chart reads
    n_2 < ... < n_K < n_1 + M and likewise for rows. The torus points are
    left untouched.

    Parameters
    ----------
    geom : Geometry
    cfg : TorusConfig
    new_base_index : int

    Returns
    -------
    Geometry

    Raises
    ------
    IndexError
        If new_base_index is not a position of geom

    """

    if not 0 <= new_base_index < geom.N:
        raise IndexError(f"Position index {new_base_index} is not in [0, {geom.N}).")

    b = geom.positions[new_base_index]
    chart = tuple(
        (v.k if v.k >= b.k else v.k + cfg.M, v.l if v.l >= b.l else v.l + cfg.M)
        for v in geom.positions
    )
    return replace(geom, chart=chart, base=new_base_index)


def translate_positions(
    positions: Iterable[Vertex | Coords], offset: Coords, cfg: TorusConfig
) -> list[Vertex]:
    dk, dl = offset
    return [cfg.vertex(p[0] + dk, p[1] + dl) for p in positions]


_GRID = re.compile(r"^grid:(\d+)x(\d+)$")


def parse_geometry(value: Any, N: int, cfg: TorusConfig) -> Geometry:
    """Build a Geometry from a config value.

    Parameters
    ----------
    value : list[list[int]] | str
        Either a JSON-style list of [k, l] pairs or one of the named classes
        'line', 'coincident', 'generic', 'grid:KxL'
    N : int
        The particle count the geometry must hold
    cfg : TorusConfig

    Returns
    -------
    Geometry

    Raises
    ------
    ConfigError
        If the value is malformed or inconsistent with N and M

    Note
    ----
    Named grids place columns at n_k = k and rows at m_l = l·K, which keeps
    the delta schedules non-degenerate for M >= K·L + 1. A named grid keeps
    its declared class even when L = 1.

    """

    if value is None:
        value = "coincident" if N == 1 else "line"

    if isinstance(value, list):
        if len(value) != N:
            raise ConfigError(f"Geometry holds {len(value)} positions but N={N}.")
        try:
            points = [(int(k), int(l)) for k, l in value]
        except (TypeError, ValueError) as err:
            raise ConfigError(f"Malformed geometry {value}: {err}") from None
        return classify_geometry(points, cfg)

    name = str(value).strip().lower()
    if name == "coincident":
        return classify_geometry([(0, 0)] * N, cfg)
    if name == "line":
        if N > cfg.M:
            raise ConfigError(f"Cannot place N={N} distinct points on a line of M={cfg.M}.")
        return classify_geometry([(k, 0) for k in range(N)], cfg)
    if name == "generic":
        if N > cfg.M:
            raise ConfigError(f"Cannot place N={N} generic points on a torus of M={cfg.M}.")
        geom = classify_geometry([(j, j) for j in range(N)], cfg)
        if N >= 2 and geom.classification.kind is not GeometryClass.GENERIC:
            raise ConfigError(f"Cannot place N={N} generic points on a torus of M={cfg.M}.")
        return geom

    match = _GRID.match(name)
    if match is None:
        raise ConfigError(f"Unknown geometry '{value}'.")
    K, L = int(match.group(1)), int(match.group(2))
    if K * L != N:
        raise ConfigError(f"Geometry {name} holds {K * L} points but N={N}.")
    if K < 1 or L < 1 or K > cfg.M or (L - 1) * K >= cfg.M:
        raise ConfigError(f"Geometry {name} does not fit the torus M={cfg.M}.")
    points = [cfg.vertex(k, l * K) for l in range(L) for k in range(K)]
    geom = classify_geometry(points, cfg)
    return replace(geom, classification=Classification.grid(K, L))
