"""
title : spectrum.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import Iterable, NamedTuple, Sequence
import csv
import io
import logging

import numpy as np
import scipy.linalg as sla
from scipy.spatial import cKDTree

from qkagome.core import CLUSTER_RADIUS, SECTOR_CAP, Complex, SectorTooLarge
from qkagome.evolution import EvolutionBlock
from qkagome.structures import UnionFind

__all__ = [
    "Cluster",
    "cluster_eigenvalues",
    "diagonalize",
    "unit_modulus_defect",
    "spectrum_csv",
    "read_spectrum_csv",
]

logger = logging.getLogger(__name__)


class Cluster(NamedTuple):
    """Eigenvalues within the clustering radius, merged into one value."""

    value: complex
    multiplicity: int


def cluster_eigenvalues(
    eigenvalues: Sequence[Complex], radius: float = CLUSTER_RADIUS
) -> list[Cluster]:
    """Group eigenvalues whose chains of neighbours lie within radius.

    Parameters
    ----------
    eigenvalues : Sequence[complex]
    radius : float = CLUSTER_RADIUS

    Returns
    -------
    list[Cluster]
        Sorted by argument, then modulus; the value is the cluster mean

    """

    values = np.asarray(eigenvalues, dtype=complex)
    if values.size == 0:
        return []

    points = np.column_stack([values.real, values.imag])
    U = UnionFind(range(len(values)))
    for i, j in cKDTree(points).query_pairs(radius):
        U.union(i, j)

    clusters = [
        Cluster(complex(np.mean(values[members])), len(members)) for members in U.groups()
    ]
    clusters.sort(key=lambda c: (round(float(np.angle(c.value)), 9), round(abs(c.value), 9)))
    return clusters


def diagonalize(
    block: EvolutionBlock, radius: float = CLUSTER_RADIUS, cap: int = SECTOR_CAP
) -> list[Cluster]:
    """Full spectrum of a block by a dense eigen solve, clustered.

    Raises
    ------
    SectorTooLarge
        If the block dimension exceeds cap

    """

    if block.dim > cap:
        raise SectorTooLarge(block.dim, cap)

    eigenvalues = sla.eigvals(block.matrix)
    clusters = cluster_eigenvalues(eigenvalues, radius)
    logger.info(
        "Diagonalized sector %s: %d eigenvalues in %d clusters.",
        block.charge,
        block.dim,
        len(clusters),
    )
    return clusters


def unit_modulus_defect(clusters: Iterable[Cluster]) -> float:
    """max ||λ| - 1| over a spectrum."""
    return float(max((abs(abs(c.value) - 1.0) for c in clusters), default=0.0))


def spectrum_csv(clusters: Iterable[Cluster]) -> str:
    """Rows of re, im, multiplicity with a header line."""

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["re", "im", "multiplicity"])
    for c in clusters:
        writer.writerow([f"{c.value.real:.12g}", f"{c.value.imag:.12g}", c.multiplicity])
    return buf.getvalue()


def read_spectrum_csv(text: str) -> list[Cluster]:
    reader = csv.DictReader(io.StringIO(text))
    return [
        Cluster(complex(float(row["re"]), float(row["im"])), int(row["multiplicity"]))
        for row in reader
    ]
