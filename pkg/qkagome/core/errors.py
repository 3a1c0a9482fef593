"""
title : errors.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

__all__ = [
    "KagomeError",
    "ConfigError",
    "SectorTooLarge",
    "DegenerateSchedule",
    "SingularKernel",
    "SupportError",
    "ConstructionError",
    "StageError",
]


class KagomeError(Exception):
    """Root of every error raised by qkagome."""


class ConfigError(KagomeError, ValueError):
    """An invalid run configuration or model parameter."""


class SectorTooLarge(KagomeError):
    """A charge sector exceeds the configured dimension cap.

    Parameters
    ----------
    dim : int
        The dimension the sector would have
    cap : int
        The configured cap

    """

    def __init__(self, dim: int, cap: int) -> None:
        super().__init__(f"Sector dimension {dim} exceeds the cap {cap}.")
        self.dim = dim
        self.cap = cap


class DegenerateSchedule(KagomeError, ValueError):
    """A horizontal and a vertical difference coincide in a delta schedule."""


class SingularKernel(KagomeError, ZeroDivisionError):
    """The two-particle kernel is evaluated at coincident arguments."""


class SupportError(KagomeError, ValueError):
    """A state has amplitude outside the sector it is applied to."""


class ConstructionError(KagomeError, RuntimeError):
    """A construction produced non-finite or inconsistent values."""


class StageError(KagomeError):
    """A pipeline stage failed.

    Parameters
    ----------
    stage : str
        The name of the failing stage
    cause : Exception
        The original exception

    """

    def __init__(self, stage: str, cause: Exception) -> None:
        super().__init__(f"Stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
