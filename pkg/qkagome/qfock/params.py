"""
title : params.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from dataclasses import dataclass

from qkagome.core import ConfigError

__all__ = ["ModelParams"]


@dataclass(frozen=True)
class ModelParams:
    """Deformation parameter of the q-oscillator algebra.

    Parameters
    ----------
    q : float
        Must lie in (0, 1), the unitary regime

    Raises
    ------
    ConfigError
        If q is not in (0, 1)

    """

    q: float

    def __post_init__(self) -> None:
        if not 0.0 < self.q < 1.0:
            raise ConfigError(f"q must lie in (0,1), got q={self.q}.")
