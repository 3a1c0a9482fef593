"""
title : matching.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import Any, Sequence
from dataclasses import dataclass, field

import numpy as np

from qkagome.core import MATCH_TOL, Complex
from qkagome.spectral import SolutionSet

from .spectrum import Cluster

__all__ = ["Prediction", "Match", "MatchReport", "match"]


@dataclass(frozen=True)
class Prediction:
    Lambda: complex
    branch: str = "free"
    u: tuple[complex, ...] = ()


@dataclass(frozen=True)
class Match:
    """The nearest spectrum cluster of one prediction.

    Parameters
    ----------
    prediction : Prediction
    nearest : complex | None
        None when the spectrum is empty
    distance : float
    multiplicity : int
        Multiplicity of the nearest cluster
    expected : int
    passed : bool
        distance <= tol and multiplicity >= expected

    """

    prediction: Prediction
    nearest: complex | None
    distance: float
    multiplicity: int
    expected: int
    passed: bool


@dataclass
class MatchReport:
    """Containment of predicted eigenvalues in a brute-force spectrum.

    Parameters
    ----------
    config : dict[str, Any]
        The resolved configuration that produced the report
    eigenvalues : list[Cluster]
    matches : list[Match]
    tol : float
    unmatched_fraction : float
        Share of the spectrum, counted with multiplicity, that no
        prediction accounts for
    timings : dict[str, float] | None = None
    extras : dict[str, Any]
        Optional sections such as ansatz conditions or invariants

    """

    config: dict[str, Any]
    eigenvalues: list[Cluster]
    matches: list[Match]
    tol: float
    unmatched_fraction: float
    timings: dict[str, float] | None = None
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """At least one prediction, and every prediction contained."""
        return bool(self.matches) and all(m.passed for m in self.matches)

    @property
    def dim(self) -> int:
        return sum(c.multiplicity for c in self.eigenvalues)

    def to_json(self) -> dict[str, Any]:
        out = {
            "config": self.config,
            "passed": self.passed,
            "tol": self.tol,
            "dim": self.dim,
            "unmatched_fraction": self.unmatched_fraction,
            "eigenvalues": [
                {"value": [c.value.real, c.value.imag], "multiplicity": c.multiplicity}
                for c in self.eigenvalues
            ],
            "predictions": [
                {
                    "Lambda": [m.prediction.Lambda.real, m.prediction.Lambda.imag],
                    "branch": m.prediction.branch,
                    "u": [[z.real, z.imag] for z in m.prediction.u],
                }
                for m in self.matches
            ],
            "matches": [
                {
                    "nearest": None if m.nearest is None else [m.nearest.real, m.nearest.imag],
                    "distance": m.distance,
                    "multiplicity": m.multiplicity,
                    "expected": m.expected,
                    "passed": m.passed,
                }
                for m in self.matches
            ],
        }
        out.update(self.extras)
        if self.timings is not None:
            out["timings"] = self.timings
        return out


def _predictions(predictions: SolutionSet | Sequence[Complex | Prediction]) -> list[Prediction]:
    if isinstance(predictions, SolutionSet):
        return [
            Prediction(s.Lambda, s.branch, s.u) for s in predictions.solutions if s.Lambda is not None
        ]
    return [p if isinstance(p, Prediction) else Prediction(complex(p)) for p in predictions]


def match(
    predictions: SolutionSet | Sequence[Complex | Prediction],
    eigenvalues: Sequence[Cluster],
    tol: float = MATCH_TOL,
    expected: int = 1,
    config: dict[str, Any] | None = None,
) -> MatchReport:
    """Find the nearest eigenvalue cluster of every predicted eigenvalue.

    The spectrum may hold eigenvalues no prediction explains; only
    containment of the predictions is judged.

    Parameters
    ----------
    predictions : SolutionSet | Sequence[complex | Prediction]
    eigenvalues : Sequence[Cluster]
    tol : float = MATCH_TOL
    expected : int = 1
        Multiplicity every prediction must reach
    config : dict[str, Any] | None = None
        Echoed in the report

    Returns
    -------
    MatchReport

    """

    preds = _predictions(predictions)
    clusters = list(eigenvalues)
    values = np.array([c.value for c in clusters], dtype=complex)

    matches: list[Match] = []
    claimed = np.zeros(len(clusters), dtype=int)
    for p in preds:
        if len(clusters) == 0:
            matches.append(Match(p, None, float("inf"), 0, expected, False))
            continue
        dist = np.abs(values - p.Lambda)
        i = int(np.argmin(dist))
        ok = bool(dist[i] <= tol and clusters[i].multiplicity >= expected)
        if dist[i] <= tol:
            claimed[i] += expected
        matches.append(
            Match(p, complex(values[i]), float(dist[i]), clusters[i].multiplicity, expected, ok)
        )

    dim = sum(c.multiplicity for c in clusters)
    accounted = sum(min(c.multiplicity, int(k)) for c, k in zip(clusters, claimed))
    fraction = 1.0 - accounted / dim if dim else 0.0

    return MatchReport(config or {}, clusters, matches, tol, fraction)
