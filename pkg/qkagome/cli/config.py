"""
title : config.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import Any, Mapping
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
import json
import os

from qkagome.core import (
    CLUSTER_RADIUS,
    DEDUP_RADIUS,
    MATCH_TOL,
    MULTISTART,
    RESIDUAL_TOL,
    SECTOR_CAP,
    SEED,
    SEED_ENV,
    UNITARITY_TOL,
    ConfigError,
)
from qkagome.lattice import (
    Classification,
    Geometry,
    GeometryClass,
    TorusConfig,
    parse_geometry,
)
from qkagome.qfock import ModelParams

__all__ = ["RunConfig", "parse_family"]

_MODES = ("u", "x-free")


@dataclass(frozen=True)
class RunConfig:
    """Everything one experiment needs, with the library defaults.

    Parameters
    ----------
    M : int = 2
    q : float = 0.5
    N : int = 1
    geometry : list[list[int]] | str | None = None
        Positions or a named class; coincident for N=1 and line otherwise
    family : str | None = None
        Names the polynomial family independently of the geometry
    family_q : float | None = None
        Evaluates the family at another q than the model
    mode : str = 'u'
    unitarity_tol, residual_tol, match_tol, dedup, cluster_radius : float
    multistart : int = MULTISTART
    seed : int = SEED
    cap : int = SECTOR_CAP
    jobs : int = 1
    timings : bool = False
        Include wall-clock timings in reports
    output : str | None = None
    csv : str | None = None

    """

    M: int = 2
    q: float = 0.5
    N: int = 1
    geometry: Any = None
    family: str | None = None
    family_q: float | None = None
    mode: str = "u"
    unitarity_tol: float = UNITARITY_TOL
    residual_tol: float = RESIDUAL_TOL
    match_tol: float = MATCH_TOL
    dedup: float = DEDUP_RADIUS
    cluster_radius: float = CLUSTER_RADIUS
    multistart: int = MULTISTART
    seed: int = SEED
    cap: int = SECTOR_CAP
    jobs: int = 1
    timings: bool = False
    output: str | None = None
    csv: str | None = None

    @staticmethod
    def from_dict(payload: Mapping[str, Any]) -> RunConfig:
        """Build a config from a mapping; unknown keys are rejected.

        Raises
        ------
        ConfigError

        """

        known = {f.name for f in fields(RunConfig)}
        unknown = sorted(set(payload) - known)
        if unknown:
            raise ConfigError(f"Unknown configuration keys {unknown}.")
        return RunConfig(**dict(payload))

    @staticmethod
    def from_json(path: str | Path) -> RunConfig:
        """Read a config file.

        Raises
        ------
        FileNotFoundError
            If path does not exist
        ConfigError
            If the file is not a JSON object of known keys

        """

        text = Path(path).read_text()
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as err:
            raise ConfigError(f"Config file {path} is not valid JSON: {err}") from None
        if not isinstance(payload, dict):
            raise ConfigError(f"Config file {path} must hold a JSON object.")
        return RunConfig.from_dict(payload)

    def with_overrides(self, **overrides: Any) -> RunConfig:
        """Replace every field whose override is not None."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def with_env(self, env: Mapping[str, str] | None = None) -> RunConfig:
        """Take the seed from the KB_SEED environment variable when set."""

        env = os.environ if env is None else env
        if SEED_ENV not in env:
            return self
        try:
            return replace(self, seed=int(env[SEED_ENV]))
        except ValueError:
            raise ConfigError(f"{SEED_ENV}={env[SEED_ENV]} is not an integer.") from None

    def validate(self) -> RunConfig:
        """Check every field, returning self.

        Raises
        ------
        ConfigError

        """

        if not isinstance(self.M, int) or self.M < 1:
            raise ConfigError(f"M must be a positive integer, got M={self.M}.")
        if not isinstance(self.N, int) or self.N < 1:
            raise ConfigError(f"N must be a positive integer, got N={self.N}.")
        self.model()
        if self.family_q is not None:
            ModelParams(self.family_q)
        if self.mode not in _MODES:
            raise ConfigError(f"Unknown mode={self.mode}, expected one of {list(_MODES)}.")
        for name in ("unitarity_tol", "residual_tol", "match_tol", "dedup", "cluster_radius"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or value <= 0:
                raise ConfigError(f"{name} must be positive, got {name}={value}.")
        for name in ("multistart", "cap", "jobs"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {name}={value}.")
        self.geometry_obj()
        self.classification()
        return self

    def torus(self) -> TorusConfig:
        return TorusConfig(self.M)

    def model(self) -> ModelParams:
        return ModelParams(self.q)

    def geometry_obj(self) -> Geometry:
        return parse_geometry(self.geometry, self.N, self.torus())

    def classification(self) -> Classification:
        """The class selecting the polynomial family."""

        if self.family is None:
            return self.geometry_obj().classification
        return parse_family(self.family, self.N)

    def to_json(self) -> dict[str, Any]:
        return asdict(self)


def parse_family(name: str, N: int) -> Classification:
    """Classification of a family name: line, coincident, generic or grid:KxL."""

    text = str(name).strip().lower()
    for kind in (GeometryClass.LINE, GeometryClass.COINCIDENT, GeometryClass.GENERIC):
        if text == kind.value:
            return Classification(kind)
    if text.startswith("grid:"):
        try:
            K, L = (int(s) for s in text[5:].split("x"))
        except ValueError:
            raise ConfigError(f"Unknown family '{name}'.") from None
        if K * L != N or L < 1 or K < 1:
            raise ConfigError(f"Family {text} holds {K * L} points but N={N}.")
        return Classification.grid(K, L)
    raise ConfigError(f"Unknown family '{name}'.")
